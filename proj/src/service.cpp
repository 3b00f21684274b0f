#include "rhomb/service.hpp"

#include <httplib.h>

namespace rhomb {

using nlohmann::ordered_json;

namespace {

Reply error_reply(int status, const std::string& kind, const std::string& message) {
  return {status, ordered_json{{"error", kind}, {"message", message}}.dump()};
}

ordered_json body_json(const std::string& body) {
  if (body.empty()) return ordered_json::object();
  ordered_json j;
  try {
    j = ordered_json::parse(body);
  } catch (const ordered_json::parse_error& e) {
    throw SessionError(SessionError::Kind::kBadRequest, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object()) throw SessionError(SessionError::Kind::kBadRequest, "body must be an object");
  return j;
}

std::optional<std::uint64_t> optional_revision(const ordered_json& j) {
  auto it = j.find("revision");
  if (it == j.end()) return std::nullopt;
  if (!it->is_number_unsigned())
    throw SessionError(SessionError::Kind::kBadRequest, "revision must be a non-negative integer");
  return it->get<std::uint64_t>();
}

int parse_label(const std::string& text) {
  try {
    std::size_t used = 0;
    int label = std::stoi(text, &used);
    if (used == text.size()) return label;
  } catch (const std::exception&) {
  }
  throw SessionError(SessionError::Kind::kNotFound, "no label " + text);
}

ordered_json dispatch(EditSession& s, const std::string& method, const std::string& path,
                      const std::string& body) {
  using Kind = SessionError::Kind;
  if (method == "GET") {
    if (path == "/session") return s.state();
    if (path == "/symmetry") return s.symmetry();
    if (path.rfind("/patch/", 0) == 0) return s.patch(parse_label(path.substr(7)));
  } else if (method == "POST") {
    if (path == "/flip") {
      const ordered_json j = body_json(body);
      if (!j.contains("label") || !j["label"].is_number_integer())
        throw SessionError(Kind::kBadRequest, "label must be an integer");
      if (!j.contains("site") || !j["site"].is_string())
        throw SessionError(Kind::kBadRequest, "site must be a string");
      auto rev = optional_revision(j);
      if (!rev) throw SessionError(Kind::kBadRequest, "revision is required");
      return s.flip(j["label"].get<int>(), j["site"].get<std::string>(), *rev);
    }
    if (path == "/undo") return s.undo(optional_revision(body_json(body)));
    if (path == "/redo") return s.redo(optional_revision(body_json(body)));
    if (path == "/save") {
      const ordered_json j = body_json(body);
      std::string target;
      if (auto it = j.find("path"); it != j.end()) {
        if (!it->is_string()) throw SessionError(Kind::kBadRequest, "path must be a string");
        target = it->get<std::string>();
      }
      return s.save(target);
    }
  }
  throw SessionError(Kind::kNotFound, "no route " + method + " " + path);
}

}  // namespace

Reply handle_request(EditSession& session, const std::string& method, const std::string& path,
                     const std::string& body) {
  using Kind = SessionError::Kind;
  try {
    return {200, dispatch(session, method, path, body).dump()};
  } catch (const SessionError& e) {
    switch (e.kind()) {
      case Kind::kBadRequest: return error_reply(400, "bad_request", e.what());
      case Kind::kNotFound: return error_reply(404, "not_found", e.what());
      case Kind::kConflict: return error_reply(409, "conflict", e.what());
      case Kind::kValidation: return error_reply(422, "validation", e.what());
    }
    return error_reply(500, "internal", e.what());
  } catch (const StaleSiteError& e) {
    return error_reply(409, "conflict", e.what());
  } catch (const std::exception& e) {
    return error_reply(500, "internal", e.what());
  }
}

void install_routes(httplib::Server& server, EditSession& session) {
  auto route = [&session](const httplib::Request& req, httplib::Response& res) {
    Reply r = handle_request(session, req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get(".*", route);
  server.Post(".*", route);
}

}  // namespace rhomb
