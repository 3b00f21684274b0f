#pragma once

// HTTP/JSON front end of an EditSession.
//
//   GET  /session            n, sequence, labels, dirty flag, revision
//   GET  /patch/<label>      tiles and flip sites
//   POST /flip               {"label", "site", "revision"}
//   POST /undo, /redo        optional {"revision"}
//   GET  /symmetry           stars and corner flags of the draft
//   POST /save               optional {"path"}
//
// Errors come back as {"error": kind, "message": text} with status 400
// (bad request), 404 (not found), 409 (conflict) or 422 (validation).

#include <string>

#include "rhomb/session.hpp"

namespace httplib {
class Server;
}

namespace rhomb {

struct Reply {
  int status = 200;
  std::string body;
};

/// Dispatches one request without any networking.
Reply handle_request(EditSession& session, const std::string& method, const std::string& path,
                     const std::string& body);

/// Routes every request on the server to handle_request.
void install_routes(httplib::Server& server, EditSession& session);

}  // namespace rhomb
