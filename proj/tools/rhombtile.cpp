// rhombtile: command line front end.
//
// Exit codes: 0 success, 1 negative result, 2 usage error, 3 internal error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "rhomb/document.hpp"
#include "rhomb/flips.hpp"
#include "rhomb/ksk.hpp"
#include "rhomb/search.hpp"
#include "rhomb/service.hpp"
#include "rhomb/session.hpp"
#include "rhomb/svg.hpp"
#include "rhomb/symmetry.hpp"

using namespace rhomb;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 7;
  std::string seq;
  std::string chunks;
  std::string doc;
  std::string out;
  std::string checkpoint;
  std::string script;
  std::string apply;
  bool resume = false;
  bool overlay = false;
  int label = 0;
  int depth = 1;
  int port = 8080;
  unsigned threads = 1;
  std::uint64_t limit = 0;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

const Ring& ring_of(int n) {
  try {
    return Ring::of(n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

EdgeSequence sequence_of(const Options& o) {
  if (o.seq.empty()) throw UsageError("--seq is required");
  try {
    return parse_sequence(o.seq);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--seq: ") + e.what());
  }
}

void require_label(const Ring& ring, int label) {
  const auto labels = prototile_labels(ring.n());
  if (std::find(labels.begin(), labels.end(), label) == labels.end())
    throw UsageError("no prototile label " + std::to_string(label) + " for n = " +
                     std::to_string(ring.n()));
}

SubstitutionDocument read_document(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("no such document " + path);
  return load_document(path);
}

// From --doc if given, else constructed from --n and --seq.
SubstitutionDocument load_or_construct(const Options& o) {
  if (!o.doc.empty()) return read_document(o.doc);
  const Ring& ring = ring_of(o.n);
  EdgeSequence seq = sequence_of(o);
  if (!is_standard(seq, ring.n())) throw UsageError("sequence is not standard");
  return {construct_substitution(ring, seq), {}};
}

SvgStyle style_of(const Options& o) {
  SvgStyle s;
  s.pseudolines = o.overlay;
  s.arrows = o.overlay;
  return s;
}

int cmd_check(const Options& o) {
  const Ring& ring = ring_of(o.n);
  const EdgeSequence seq = sequence_of(o);
  if (!is_standard(seq, ring.n())) {
    std::cout << "sequence " << format_sequence(seq) << " is not standard\n";
    return kNegative;
  }
  std::cout << "inflation factor " << inflation_factor(ring, seq) << "\n";
  std::vector<int> labels = prototile_labels(ring.n());
  if (o.label) {
    require_label(ring, o.label);
    labels = {o.label};
  }
  bool all = true;
  for (int label : labels) {
    Boundary b = build_boundary(ring, seq, label);
    std::cout << "label " << label << ": ";
    if (!is_good_curve(b)) {
      std::cout << "not a good curve\n";
      all = false;
      continue;
    }
    bool pass = false;
    try {
      pass = ksk_check(b);
    } catch (const PairingError& e) {
      std::cout << "pairing failed (" << e.what() << ")\n";
      all = false;
      continue;
    }
    std::cout << (pass ? "tilable" : "fails KSK") << "\n";
    all = all && pass;
  }
  return all ? kOk : kNegative;
}

int cmd_search(const Options& o) {
  const Ring& ring = ring_of(o.n);
  if (o.chunks.empty()) throw UsageError("--chunks is required");
  MultisetSpec spec;
  try {
    spec = parse_chunks(o.chunks);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--chunks: ") + e.what());
  }
  if (o.resume && o.checkpoint.empty()) throw UsageError("--resume needs --checkpoint");

  std::optional<ChunkIterator> it;
  if (o.resume) {
    std::ifstream in(o.checkpoint);
    std::string token;
    if (!in || !std::getline(in, token)) throw UsageError("cannot read " + o.checkpoint);
    if (token == "done") {
      std::cout << "checkpoint is complete\n";
      return kOk;
    }
    try {
      it.emplace(spec, PermIterator::resume(token));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("checkpoint: ") + e.what());
    }
  } else {
    it.emplace(spec);
  }

  std::ofstream passes;
  if (!o.out.empty()) {
    passes.open(o.out, o.resume ? std::ios::app : std::ios::trunc);
    if (!passes) throw UsageError("cannot write " + o.out);
  }
  SweepOptions opts;
  opts.threads = o.threads;
  opts.limit = o.limit;
  opts.checkpoint_path = o.checkpoint;
  opts.on_pass = [&](const EdgeSequence& s) {
    if (passes.is_open())
      passes << format_sequence(s) << "\n" << std::flush;
    else
      std::cout << format_sequence(s) << "\n";
  };
  std::cerr << "searching " << multinomial(spec) << " arrangements\n";
  const SweepStats st = sweep_ksk(ring, *it, opts);
  std::cerr << "checked " << st.checked << ", passed " << st.passed << ", not standard "
            << st.not_standard << ", not good " << st.not_good_curve << ", KSK fail "
            << st.ksk_fail << (st.finished ? "" : " (stopped early)") << "\n";
  return st.passed > 0 ? kOk : kNegative;
}

int cmd_tile(const Options& o) {
  const Ring& ring = ring_of(o.n);
  const EdgeSequence seq = sequence_of(o);
  if (!is_standard(seq, ring.n())) throw UsageError("sequence is not standard");
  if (o.label) {
    require_label(ring, o.label);
    Patch p = construct_tiling(build_boundary(ring, seq, o.label));
    std::cerr << "label " << o.label << ": " << p.size() << " tiles\n";
    if (ends_with(o.out, ".svg"))
      write_text(o.out, render_svg(p, style_of(o)));
    else if (!o.out.empty())
      throw UsageError("--out for a single label must end in .svg");
    return kOk;
  }
  Substitution sub = construct_substitution(ring, seq);
  for (const auto& [label, p] : sub.images)
    std::cerr << "label " << label << ": " << p.size() << " tiles\n";
  write_text(o.out, serialize(sub));
  return kOk;
}

int cmd_subst(const Options& o) {
  SubstitutionDocument d = load_or_construct(o);
  const Substitution& sub = d.sub;
  const int label = o.label ? o.label : 2;
  require_label(*sub.ring, label);
  if (o.depth < 0) throw UsageError("--depth must be non-negative");
  Patch p = iterate(sub, Patch(*sub.ring, {prototile(label)}), o.depth);
  std::cout << "sigma^" << o.depth << "(R_" << label << "): " << p.size() << " tiles\n";
  for (const auto& [l, c] : p.label_counts()) std::cout << "  R_" << l << ": " << c << "\n";
  if (!o.out.empty()) write_text(o.out, render_svg(p, style_of(o)));
  return kOk;
}

std::vector<std::size_t> script_indices(const Options& o) {
  std::string text = o.apply;
  if (!o.script.empty()) {
    std::ifstream in(o.script);
    if (!in) throw UsageError("cannot read " + o.script);
    std::ostringstream buf;
    buf << in.rdbuf();
    text += " " + buf.str();
  }
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream in(text);
  std::vector<std::size_t> out;
  std::string word;
  while (in >> word) {
    if (word[0] == '#') {
      std::getline(in, word);
      continue;
    }
    try {
      std::size_t used = 0;
      long v = std::stol(word, &used);
      if (used != word.size() || v < 0) throw std::invalid_argument(word);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad site index " + word);
    }
  }
  return out;
}

int cmd_flips(const Options& o) {
  SubstitutionDocument d = load_or_construct(o);
  const Ring& ring = *d.sub.ring;
  const int label = o.label ? o.label : 2;
  require_label(ring, label);
  Patch p = d.sub.image(label);
  for (std::size_t idx : script_indices(o)) {
    auto sites = find_flips(p);
    if (idx >= sites.size())
      throw UsageError("site " + std::to_string(idx) + " out of range (" +
                       std::to_string(sites.size()) + " sites)");
    p = apply_flip(p, sites[idx]);
  }
  const auto sites = find_flips(p);
  std::cout << "label " << label << ": " << p.size() << " tiles, " << sites.size()
            << " flip sites\n";
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const Vec2 m = ring.to_cartesian(sites[k].doubled_mid());
    std::cout << "  " << k << "  " << site_id(ring, sites[k]) << "  (" << m.x / 2 << ", "
              << m.y / 2 << ")\n";
  }
  if (!o.out.empty()) {
    d.sub.images.insert_or_assign(label, p);
    if (ends_with(o.out, ".svg"))
      write_text(o.out, render_svg(p, style_of(o)));
    else
      write_text(o.out, serialize(make_substitution(ring, d.sub.seq, d.sub.images), d.metadata));
  }
  return kOk;
}

int cmd_symmetry(const Options& o) {
  SubstitutionDocument d = load_or_construct(o);
  if (o.depth < 1 || o.depth > 2) throw UsageError("--depth must be 1 or 2");
  const SymmetryReport r = corner_report(d.sub, o.depth);
  write_text(o.out, report_json(*d.sub.ring, r).dump(2) + "\n");
  return kOk;
}

httplib::Server* g_server = nullptr;

int cmd_serve(const Options& o) {
  if (o.doc.empty()) throw UsageError("--doc is required");
  EditSession session(read_document(o.doc), o.out.empty() ? o.doc : o.out);
  httplib::Server server;
  install_routes(server, session);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::cerr << "session " << session.id() << " on http://127.0.0.1:" << o.port << "\n";
  if (!server.listen("127.0.0.1", o.port)) {
    std::cerr << "cannot listen on port " << o.port << "\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rhombic substitution tilings"};
  app.require_subcommand(1);
  Options o;

  auto add_n = [&](CLI::App* c) { c->add_option("--n", o.n, "rotational order (odd)"); };
  auto add_seq = [&](CLI::App* c) { c->add_option("--seq", o.seq, "edge sequence, e.g. 1,-1,0"); };
  auto add_doc = [&](CLI::App* c) {
    c->add_option("--doc", o.doc, "substitution document (instead of --n/--seq)");
  };
  auto add_out = [&](CLI::App* c, const std::string& what) {
    c->add_option("--out", o.out, what);
  };

  CLI::App* check = app.add_subcommand("check", "KSK test for every prototile boundary");
  add_n(check);
  add_seq(check);
  check->add_option("--label", o.label, "only this label");

  CLI::App* search = app.add_subcommand("search", "sweep chunk permutations for tilable sequences");
  add_n(search);
  search->add_option("--chunks", o.chunks, "chunk list, e.g. \"0x5;-1,1x5\"");
  search->add_option("--checkpoint", o.checkpoint, "checkpoint file, rewritten per batch");
  search->add_flag("--resume", o.resume, "continue from --checkpoint");
  search->add_option("--threads", o.threads, "worker threads");
  search->add_option("--limit", o.limit, "stop after this many sequences");
  add_out(search, "append passing sequences here");

  CLI::App* tile = app.add_subcommand("tile", "construct tilings of the boundaries");
  add_n(tile);
  add_seq(tile);
  tile->add_option("--label", o.label, "one label, written as SVG");
  tile->add_flag("--overlay", o.overlay, "draw pseudolines and edge arrows");
  add_out(tile, "document (or .svg with --label)");

  CLI::App* subst = app.add_subcommand("subst", "iterate a substitution");
  add_n(subst);
  add_seq(subst);
  add_doc(subst);
  subst->add_option("--label", o.label, "prototile to start from (default 2)");
  subst->add_option("--depth", o.depth, "number of iterations");
  subst->add_flag("--overlay", o.overlay, "draw pseudolines and edge arrows");
  add_out(subst, "SVG of the result");

  CLI::App* flips = app.add_subcommand("flips", "list flip sites, apply scripted flips");
  add_n(flips);
  add_seq(flips);
  add_doc(flips);
  flips->add_option("--label", o.label, "image to edit (default 2)");
  flips->add_option("--apply", o.apply, "site indices, comma separated");
  flips->add_option("--script", o.script, "file of site indices");
  flips->add_flag("--overlay", o.overlay, "draw pseudolines and edge arrows");
  add_out(flips, "edited document (or .svg)");

  CLI::App* symmetry = app.add_subcommand("symmetry", "stars and corner R_2 report");
  add_n(symmetry);
  add_seq(symmetry);
  add_doc(symmetry);
  symmetry->add_option("--depth", o.depth, "1, or 2 to include second-level stars");
  add_out(symmetry, "JSON report");

  CLI::App* serve = app.add_subcommand("serve", "editing service for a document");
  add_doc(serve);
  serve->add_option("--port", o.port, "TCP port on 127.0.0.1");
  add_out(serve, "save path (default: the document)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(o);
    if (*search) return cmd_search(o);
    if (*tile) return cmd_tile(o);
    if (*subst) return cmd_subst(o);
    if (*flips) return cmd_flips(o);
    if (*symmetry) return cmd_symmetry(o);
    if (*serve) return cmd_serve(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DocumentError& e) {
    std::cerr << "document: " << e.what();
    if (e.line()) std::cerr << " (line " << e.line() << ")";
    std::cerr << "\n";
    return kUsage;
  } catch (const UntilableError& e) {
    std::cerr << e.what() << "\n";
    return kNegative;
  } catch (const std::invalid_argument& e) {
    // bad combinations that the library rejects, e.g. a boundary that is not a good curve
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
