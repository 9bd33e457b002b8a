#pragma once

// Command-line surface: subcommand dispatch, stable JSON reports, and the
// exit-code contract (0 success / verified, 1 mathematical negative,
// 2 usage or resource error).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monounion/certs.hpp"
#include "monounion/classify.hpp"
#include "monounion/rewrite.hpp"
#include "monounion/typespace.hpp"
#include "monounion/words.hpp"

namespace monounion::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::usage, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ParamMap parse_params(const std::string& text) {
  ParamMap pm;
  if (text.empty()) return pm;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t eq = item.find('=');
    if (eq != 1)
      throw Error(ErrorKind::usage, "bad parameter '" + item +
                                        "': expected <name>=<value>");
    pm[item[0]] = std::stoi(item.substr(2));
  }
  return pm;
}

// The presentation a subcommand operates on: either a family instance or a
// user-supplied file.
inline Presentation select_presentation(const std::string& family_label,
                                        const std::string& params,
                                        const std::string& path) {
  if (!family_label.empty() && !path.empty())
    throw Error(ErrorKind::usage, "--family and --presentation are exclusive");
  if (!family_label.empty())
    return instantiate_family(family_from_label(family_label),
                              parse_params(params));
  if (!path.empty()) return parse_presentation(read_file(path));
  throw Error(ErrorKind::usage, "one of --family or --presentation is required");
}

inline json step_json(const RewriteStep& st) {
  return json{{"from", st.source},
              {"to", st.target},
              {"relation", st.relation},
              {"forward", st.forward},
              {"position", st.position}};
}

inline json path_json(const std::vector<RewriteStep>& path) {
  json arr = json::array();
  for (auto& st : path) arr.push_back(step_json(st));
  return arr;
}

inline json params_json(const ParamMap& pm) {
  json obj = json::object();
  for (auto& [k, v] : pm) obj[std::string(1, k)] = v;
  return obj;
}

inline json witness_json(const WeightWitness& w) {
  json weights = json::object();
  for (auto& [c, wt] : w.weights) {
    if (wt.sink)
      weights[std::string(1, c)] = "sink";
    else
      weights[std::string(1, c)] = wt.value;
  }
  return json{{"weights", weights}, {"targets", w.targets}};
}

inline json table_json(const CayleyTable& t) {
  json rows = json::array();
  for (int i = 0; i < t.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < t.n(); ++j)
      row.push_back(t.elements[static_cast<size_t>(t.at(i, j))]);
    rows.push_back(row);
  }
  json gens = json::object();
  for (auto& [c, e] : t.gens)
    gens[std::string(1, c)] = t.elements[static_cast<size_t>(e)];
  return json{{"elements", t.elements}, {"map", gens}, {"rows", rows}};
}

inline json bundle_json(const CertificateBundle& b) {
  json witnesses = json::object();
  for (auto& [c, w] : b.witnesses) witnesses[std::string(1, c)] = witness_json(w);
  json evidence = json::array();
  for (auto& e : b.disjointness) {
    json item{{"pair", std::string(1, e.pair_x) + e.pair_y},
              {"kind", e.kind_str()}};
    switch (e.kind) {
      case DisjointnessEvidence::Kind::irreducible:
        item["letter"] = std::string(1, e.letter);
        break;
      case DisjointnessEvidence::Kind::table:
        item["table"] = table_json(*e.table);
        break;
      case DisjointnessEvidence::Kind::suffix:
      case DisjointnessEvidence::Kind::prefix:
        item["set"] = e.invariant_set;
        item["separated"] = std::string(1, e.separated);
        break;
    }
    evidence.push_back(item);
  }
  return json{{"family", family_info(b.family).label},
              {"params", params_json(b.params)},
              {"witnesses", witnesses},
              {"disjointness", evidence}};
}

inline json classification_json(const ClassificationReport& r) {
  json survivors = json::array();
  for (auto& s : r.survivors) {
    json entry{{"type", s.family_type.str()},
               {"canonical", s.canonical.str()},
               {"orbit_size", s.orbit_size},
               {"assignments", s.assignments},
               {"certified", s.certified}};
    entry["family"] = s.family ? json(family_info(*s.family).label) : json();
    json params = json::array();
    for (auto& pm : s.params) params.push_back(params_json(pm));
    entry["params"] = params;
    survivors.push_back(entry);
  }
  json eliminated = json::array();
  for (auto& e : r.eliminated) {
    json entry{{"canonical", e.canonical.str()},
               {"orbit_size", e.orbit_size},
               {"phase", e.phase}};
    if (e.phase == 1 && e.evidence) {
      entry["probe"] = e.evidence->probe;
      entry["strategies"] =
          json::array({e.evidence->strategy_a, e.evidence->strategy_b});
      entry["outcomes"] =
          json::array({e.evidence->outcomes_a, e.evidence->outcomes_b});
    } else {
      entry["exp_bound"] = e.exp_bound;
    }
    eliminated.push_back(entry);
  }
  return json{{"copies", r.copies},
              {"type_count", r.type_count},
              {"orbit_count", r.orbit_count},
              {"survivors", survivors},
              {"eliminated", eliminated},
              {"errors", r.errors}};
}

inline void emit(std::ostream& out, bool as_json, const std::string& command,
                 const json& invocation, const json& result,
                 const std::string& text) {
  if (as_json) {
    json report{{"version", kSchemaVersion},
                {"invocation", invocation},
                {"result", result}};
    report["invocation"]["command"] = command;
    out << report.dump(2) << "\n";
  } else {
    out << text;
  }
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"classification machinery for disjoint unions of two or three "
               "free monogenic semigroups"};
  app.require_subcommand(1);

  // Shared option state.
  int copies = 3;
  int exp_bound = 3;
  int length = 8;
  int depth = 24;
  int word_cap = 10;
  int threads = 4;
  bool as_json = false;
  std::string family_label, params_text, presentation_path, type_text;
  std::string from_text, to_text, table_path;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", as_json, "emit a JSON report"); };

  CLI::App* classify_cmd = app.add_subcommand("classify", "run the full classification");
  classify_cmd->add_option("--copies", copies, "number of copies (2 or 3)");
  classify_cmd->add_option("--exp-bound", exp_bound, "exponent bound for phase 2");
  classify_cmd->add_option("--depth", depth, "probe derivation depth");
  classify_cmd->add_option("--word-cap", word_cap, "rewrite length cap");
  classify_cmd->add_option("--threads", threads, "phase-2 worker count");
  add_json(classify_cmd);

  CLI::App* orbits_cmd = app.add_subcommand("orbits", "enumerate type orbits");
  orbits_cmd->add_option("--copies", copies, "number of copies (2 or 3)");
  add_json(orbits_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "certify a family instance");
  verify_cmd->add_option("--family", family_label, "family id, e.g. 3-vii")->required();
  verify_cmd->add_option("--params", params_text, "parameters, e.g. i=2,j=2,k=2");
  verify_cmd->add_option("--table", table_path, "replace the built-in quotient table");
  add_json(verify_cmd);

  CLI::App* normalize_cmd = app.add_subcommand("normalize", "canonical form of a type");
  normalize_cmd->add_option("--type", type_text, "type tuple, e.g. aaaabb")->required();
  add_json(normalize_cmd);

  CLI::App* consequence_cmd =
      app.add_subcommand("consequence", "bounded derivation search");
  consequence_cmd->add_option("--presentation", presentation_path, "presentation file");
  consequence_cmd->add_option("--family", family_label, "family id");
  consequence_cmd->add_option("--params", params_text, "family parameters");
  consequence_cmd->add_option("--from", from_text, "source word")->required();
  consequence_cmd->add_option("--to", to_text, "target word")->required();
  consequence_cmd->add_option("--word-cap", word_cap, "rewrite length cap");
  add_json(consequence_cmd);

  CLI::App* ball_cmd = app.add_subcommand("ball", "congruence ball of bounded length");
  ball_cmd->add_option("--presentation", presentation_path, "presentation file");
  ball_cmd->add_option("--family", family_label, "family id");
  ball_cmd->add_option("--params", params_text, "family parameters");
  ball_cmd->add_option("--length", length, "ball length bound");
  add_json(ball_cmd);

  CLI::App* eliminate_cmd = app.add_subcommand("eliminate", "try to refute a type");
  eliminate_cmd->add_option("--type", type_text, "type tuple")->required();
  eliminate_cmd->add_option("--exp-bound", exp_bound, "exponent bound for phase 2");
  eliminate_cmd->add_option("--depth", depth, "probe derivation depth");
  eliminate_cmd->add_option("--word-cap", word_cap, "rewrite length cap");
  eliminate_cmd->add_option("--threads", threads, "phase-2 worker count");
  add_json(eliminate_cmd);

  std::vector<const char*> argv;
  argv.push_back("monounion");
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(classify_cmd)) {
      ClassifyLimits lim;
      lim.exp_bound = exp_bound;
      lim.depth = depth;
      lim.maxlen = static_cast<size_t>(word_cap);
      lim.threads = threads;
      ClassificationReport r = classify(copies, lim);
      json invocation{{"copies", copies},     {"exp_bound", exp_bound},
                      {"depth", depth},       {"word_cap", word_cap},
                      {"threads", threads}};
      std::ostringstream text;
      text << "classification of disjoint unions of " << copies
           << " copies (exponents <= " << exp_bound << ")\n";
      text << r.orbit_count << " orbits of " << r.type_count << " types; "
           << r.survivors.size() << " surviving, " << r.eliminated.size()
           << " eliminated\n";
      for (auto& s : r.survivors) {
        text << "  " << (s.family ? family_info(*s.family).label : "unmatched")
             << "  type " << s.family_type.str() << "  "
             << s.assignments.size() << " surviving assignment(s)";
        if (!s.params.empty()) {
          text << " ";
          for (auto& pm : s.params) {
            text << " (";
            bool first = true;
            for (auto& [k, v] : pm) {
              if (!first) text << ",";
              first = false;
              text << k << "=" << v;
            }
            text << ")";
          }
        }
        text << (s.certified ? "  [certified]" : "  [NOT certified]") << "\n";
      }
      for (auto& e : r.errors) text << "  error: " << e << "\n";
      detail::emit(out, as_json, "classify", invocation,
                   detail::classification_json(r), text.str());
      return r.errors.empty() ? 0 : 1;
    }

    if (app.got_subcommand(orbits_cmd)) {
      auto orbs = orbits(copies);
      size_t burnside = orbit_count_burnside(copies);
      json list = json::array();
      for (auto& o : orbs)
        list.push_back(json{{"canonical", o.canonical.str()}, {"size", o.size()}});
      json result{{"orbit_count", orbs.size()},
                  {"burnside_count", burnside},
                  {"orbits", list}};
      std::ostringstream text;
      text << orbs.size() << " orbits of " << TypeTuple::count(copies)
           << " types (Burnside check: " << burnside << ")\n";
      for (auto& o : orbs)
        text << "  " << o.canonical.str() << "  size " << o.size() << "\n";
      detail::emit(out, as_json, "orbits", json{{"copies", copies}}, result,
                   text.str());
      return orbs.size() == burnside ? 0 : 1;
    }

    if (app.got_subcommand(verify_cmd)) {
      Presentation p = instantiate_family(family_from_label(family_label),
                                          detail::parse_params(params_text));
      std::optional<CayleyTable> override_table;
      if (!table_path.empty())
        override_table = parse_cayley_table(detail::read_file(table_path));
      VerifyResult r = verify_instance(p, {}, override_table);
      json invocation{{"family", family_label}, {"params", params_text}};
      if (!table_path.empty()) invocation["table"] = table_path;
      if (r.ok()) {
        json result = detail::bundle_json(*r.bundle);
        result["presentation"] = render_presentation(p);
        result["valid"] = true;
        std::ostringstream text;
        text << "verified " << family_label << ": " << render_presentation(p)
             << "\n";
        for (auto& [c, w] : r.bundle->witnesses)
          text << "  witness for " << c << ": " << w.str() << "\n";
        for (auto& e : r.bundle->disjointness)
          text << "  pair {" << e.pair_x << "," << e.pair_y
               << "}: " << e.kind_str() << "\n";
        detail::emit(out, as_json, "verify", invocation, result, text.str());
        return 0;
      }
      json result{{"valid", false}, {"reason", r.failure->message}};
      detail::emit(out, as_json, "verify", invocation, result,
                   "certificate not found: " + r.failure->message + "\n");
      return 1;
    }

    if (app.got_subcommand(normalize_cmd)) {
      TypeTuple t = TypeTuple::from_string(type_text);
      TypeTuple canon = canonical_rep(t);
      json members = json::array();
      std::vector<TypeTuple> orbit;
      for (auto& g : all_symmetries(t.copies())) {
        TypeTuple img = apply_symmetry(g, t);
        if (std::find(orbit.begin(), orbit.end(), img) == orbit.end())
          orbit.push_back(img);
      }
      std::sort(orbit.begin(), orbit.end());
      for (auto& m : orbit) members.push_back(m.str());
      json pairs = json::array();
      for (auto [x, y] : closed_pairs(t)) pairs.push_back(std::string(1, x) + y);
      json result{{"type", t.str()},
                  {"canonical", canon.str()},
                  {"orbit_size", orbit.size()},
                  {"members", members},
                  {"closed_pairs", pairs}};
      std::ostringstream text;
      text << t.str() << " canonical " << canon.str() << " orbit size "
           << orbit.size() << "\n";
      detail::emit(out, as_json, "normalize", json{{"type", type_text}}, result,
                   text.str());
      return 0;
    }

    if (app.got_subcommand(consequence_cmd)) {
      Presentation p = detail::select_presentation(family_label, params_text,
                                                   presentation_path);
      Word u = parse_word(from_text, p.alphabet);
      Word v = parse_word(to_text, p.alphabet);
      ConsequenceResult r =
          is_consequence(u, v, p, static_cast<size_t>(word_cap), 1'000'000);
      json invocation{{"from", from_text}, {"to", to_text},
                      {"word_cap", word_cap}};
      bool derivable = r.kind == ConsequenceKind::derivable;
      json result{{"verdict", derivable ? "derivable" : "unknown-within-bounds"},
                  {"visited", r.visited},
                  {"class_complete", r.class_complete}};
      std::ostringstream text;
      if (derivable) {
        result["path"] = detail::path_json(r.path);
        text << u << " = " << v << " is a consequence (" << r.path.size()
             << " steps)\n";
        Word cur = u;
        for (auto& st : r.path) {
          text << "  " << st.source << " -> " << st.target << "  (relation "
               << st.relation << (st.forward ? "" : " reversed") << " at "
               << st.position << ")\n";
          cur = st.target;
        }
      } else {
        text << "unknown within bounds (visited " << r.visited << " words)\n";
      }
      detail::emit(out, as_json, "consequence", invocation, result, text.str());
      return derivable ? 0 : 1;
    }

    if (app.got_subcommand(ball_cmd)) {
      Presentation p = detail::select_presentation(family_label, params_text,
                                                   presentation_path);
      Ball ball = congruence_ball(p, length);
      json classes = json::array();
      for (auto& cls : ball.classes) {
        json members = json::array();
        for (size_t rank : cls) members.push_back(ball.word_at(rank));
        classes.push_back(members);
      }
      json merges = json::array();
      for (auto& c : ball.merges.collisions)
        merges.push_back(json{{"x", std::string(1, c.x)},
                              {"p", c.p},
                              {"y", std::string(1, c.y)},
                              {"q", c.q}});
      json result{{"length", length},
                  {"word_count", ball.words.size()},
                  {"class_count", ball.class_count()},
                  {"pure_power_class_count", ball.pure_power_class_count()},
                  {"classes", classes},
                  {"merges", merges}};
      std::ostringstream text;
      text << ball.class_count() << " classes over " << ball.words.size()
           << " words of length <= " << length << " ("
           << ball.pure_power_class_count() << " pure-power classes)\n";
      if (ball.words.size() <= 200) {
        for (auto& cls : ball.classes) {
          text << " ";
          for (size_t rank : cls) text << " " << ball.word_at(rank);
          text << "\n";
        }
      }
      if (!ball.merges.empty()) {
        text << "merges:\n";
        for (auto& c : ball.merges.collisions)
          text << "  " << c.x << "^" << c.p << " ~ " << c.y << "^" << c.q << "\n";
      }
      detail::emit(out, as_json, "ball",
                   json{{"length", length}}, result, text.str());
      return 0;
    }

    if (app.got_subcommand(eliminate_cmd)) {
      TypeTuple t = TypeTuple::from_string(type_text);
      json invocation{{"type", type_text},
                      {"exp_bound", exp_bound},
                      {"depth", depth},
                      {"word_cap", word_cap}};
      Phase1Result p1 = phase1_eliminate(t);
      if (p1.eliminated) {
        json result{{"eliminated", true},
                    {"phase", 1},
                    {"probe", p1.evidence->probe},
                    {"strategies", json::array({p1.evidence->strategy_a,
                                                p1.evidence->strategy_b})},
                    {"outcomes", json::array({p1.evidence->outcomes_a,
                                              p1.evidence->outcomes_b})}};
        std::ostringstream text;
        text << t.str() << " eliminated in phase 1: probe "
             << p1.evidence->probe << ", " << p1.evidence->strategy_a
             << " lands {" << p1.evidence->outcomes_a << "} but "
             << p1.evidence->strategy_b << " lands {" << p1.evidence->outcomes_b
             << "}\n";
        detail::emit(out, as_json, "eliminate", invocation, result, text.str());
        return 0;
      }
      Phase2Limits lim{depth, static_cast<size_t>(word_cap), threads, {3, 4}};
      auto survivors = phase2_eliminate(t, exp_bound, lim);
      json result{{"eliminated", survivors.empty()},
                  {"phase", 2},
                  {"exp_bound", exp_bound},
                  {"survivors", survivors}};
      std::ostringstream text;
      if (survivors.empty()) {
        text << t.str() << " eliminated in phase 2 for all exponents <= "
             << exp_bound << "\n";
      } else {
        text << t.str() << " not eliminated: " << survivors.size()
             << " assignment(s) survive at bound " << exp_bound << "\n";
      }
      detail::emit(out, as_json, "eliminate", invocation, result, text.str());
      return survivors.empty() ? 0 : 1;
    }
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::usage:
      case ErrorKind::parse:
      case ErrorKind::constraint:
      case ErrorKind::resource:
        err << "error: " << e.what() << "\n";
        return 2;
    }
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace monounion::cli
