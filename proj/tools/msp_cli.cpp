// Command-line front end: enumerate graphs, evaluate contributions, print
// vanishing relations and solve them against a knowledge base.
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "msp/contrib.hpp"
#include "msp/graphs.hpp"
#include "msp/relations.hpp"

using namespace msp;
using json = nlohmann::ordered_json;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kKb = 3,
  kEnumeration = 4,
  kEvaluation = 5,
  kSolve = 6,
  kUnsupported = 7,
};

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& kind, const std::string& message) {
  throw Failure{code, kind, message};
}

struct Config {
  std::vector<std::string> datum_args;
  std::string kb_path;
  std::string format = "table";
  std::optional<int> graph_id;
  std::optional<int> delta;
  bool closed_form = false;
  std::string target;
  std::uint64_t max_nodes = EnumerationOptions{}.max_nodes;
};

relations::Datum parse_datum(const std::vector<std::string>& args) {
  std::map<std::string, std::string> kv;
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos) fail(kUsage, "usage", "expected key=value, got '" + a + "'");
    kv[a.substr(0, eq)] = a.substr(eq + 1);
  }
  for (const char* k : {"g", "gamma", "d"})
    if (!kv.count(k)) fail(kUsage, "usage", std::string("missing datum field '") + k + "'");
  relations::Datum d;
  try {
    d.g = std::stoi(kv["g"]);
    d.gamma = parse_gamma(kv["gamma"]);
    const std::string& ds = kv["d"];
    auto comma = ds.find(',');
    if (comma == std::string::npos) fail(kUsage, "usage", "d must be 'd0,dinf'");
    d.d0 = parse_rat(ds.substr(0, comma));
    d.dinf = parse_rat(ds.substr(comma + 1));
  } catch (const Failure&) {
    throw;
  } catch (const std::exception& e) {
    fail(kUsage, "usage", std::string("malformed datum: ") + e.what());
  }
  if (d.g < 0) fail(kUsage, "usage", "genus must be nonnegative");
  return d;
}

relations::KnowledgeBase load_kb(const Config& cfg) {
  if (cfg.kb_path.empty()) return {};
  try {
    return relations::KnowledgeBase::load(cfg.kb_path);
  } catch (const std::exception& e) {
    fail(kKb, "kb", e.what());
  }
}

relations::RelationOptions relation_options(const Config& cfg) {
  relations::RelationOptions o;
  o.delta = cfg.delta;
  o.eval.dtw_closed_form = cfg.closed_form;
  o.enumeration.max_nodes = cfg.max_nodes;
  return o;
}

EnumerationResult run_enumeration(const relations::Datum& d, const Config& cfg) {
  try {
    return enumerate_graphs(d.g, d.gamma, d.d0, d.dinf, relation_options(cfg).enumeration);
  } catch (const std::exception& e) {
    fail(kEnumeration, "enumeration", e.what());
  }
}

json product_json(const SymValue& v) {
  json terms = json::array();
  for (const auto& [p, c] : v) {
    json keys = json::array();
    for (const auto& k : p) keys.push_back(k);
    terms.push_back({{"product", keys}, {"coefficient", to_string(c)}});
  }
  return terms;
}

void warn(const std::vector<std::string>& ws) {
  for (const auto& w : ws) std::cerr << "warning: " << w << "\n";
}

int cmd_enumerate(const Config& cfg) {
  auto d = parse_datum(cfg.datum_args);
  auto res = run_enumeration(d, cfg);
  if (cfg.format == "record") {
    for (std::size_t i = 0; i < res.graphs.size(); ++i) {
      const auto& G = res.graphs[i];
      json j = {{"id", i}, {"canonical", canonical_form(G)}, {"aut", automorphism_order(G)}, {"graph", describe(G)}};
      std::cout << j.dump() << "\n";
    }
    json summary = {{"datum", d.str()},
                    {"regular", res.graphs.size()},
                    {"irregular", res.irregular},
                    {"excluded", res.excluded.size()}};
    std::cout << summary.dump() << "\n";
    return kOk;
  }
  std::cout << "datum " << d.str() << "\n";
  for (std::size_t i = 0; i < res.graphs.size(); ++i) {
    const auto& G = res.graphs[i];
    std::cout << i << "\taut=" << automorphism_order(G) << "\t" << describe(G) << "\n";
  }
  std::cout << "regular=" << res.graphs.size() << " irregular=" << res.irregular
            << " excluded=" << res.excluded.size() << "\n";
  return kOk;
}

int delta_for(const relations::Datum& d, const Config& cfg) {
  if (cfg.delta) return *cfg.delta;
  try {
    auto v = relations::msp_vdim(d.g, d.gamma, d.d0, d.dinf);
    if (v.warning) warn({*v.warning});
    if (v.delta <= 0)
      fail(kUnsupported, "unsupported",
           "virtual dimension " + std::to_string(v.delta) + " of " + d.str() + " is not positive; no vanishing relation");
    return v.delta;
  } catch (const Failure&) {
    throw;
  } catch (const std::exception& e) {
    fail(kUnsupported, "unsupported", e.what());
  }
}

int cmd_eval(const Config& cfg) {
  auto d = parse_datum(cfg.datum_args);
  const int delta = delta_for(d, cfg);
  auto res = run_enumeration(d, cfg);
  const auto opts = relation_options(cfg);
  if (cfg.graph_id && (*cfg.graph_id < 0 || *cfg.graph_id >= static_cast<int>(res.graphs.size())))
    fail(kUsage, "usage", "graph id out of range (datum has " + std::to_string(res.graphs.size()) + " graphs)");
  for (std::size_t i = 0; i < res.graphs.size(); ++i) {
    if (cfg.graph_id && static_cast<int>(i) != *cfg.graph_id) continue;
    const auto& G = res.graphs[i];
    SymValue v;
    try {
      v = contrib::graph_contribution(G, delta, opts.eval);
    } catch (const std::exception& e) {
      fail(kEvaluation, "evaluation", "graph " + std::to_string(i) + ": " + e.what());
    }
    if (cfg.format == "record") {
      json j = {{"id", i}, {"graph", describe(G)}, {"contribution", sym_value_str(v)}, {"terms", product_json(v)}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << i << "\t" << describe(G) << "\n\tContr = " << sym_value_str(v) << "\n";
    }
  }
  return kOk;
}

relations::RelationResult relation_or_fail(const relations::Datum& d, const relations::KnowledgeBase& kb,
                                           const Config& cfg) {
  auto opts = relation_options(cfg);
  if (!opts.delta) opts.delta = delta_for(d, cfg);
  try {
    return relations::build_relation(d, kb, opts);
  } catch (const GraphError& e) {
    fail(kEnumeration, "enumeration", e.what());
  } catch (const std::exception& e) {
    fail(kEvaluation, "evaluation", e.what());
  }
}

int cmd_relation(const Config& cfg) {
  auto d = parse_datum(cfg.datum_args);
  auto kb = load_kb(cfg);
  auto res = relation_or_fail(d, kb, cfg);
  warn(res.warnings);
  if (cfg.format == "record") {
    json unknowns = res.relation.unknowns();
    json j = {{"datum", d.str()},
              {"delta", res.delta},
              {"graphs", res.graphs.size()},
              {"relation", res.relation.str()},
              {"terms", product_json(res.relation.value)},
              {"unknowns", unknowns}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << res.relation.str() << "\n";
  }
  return kOk;
}

int cmd_solve(const Config& cfg) {
  auto d = parse_datum(cfg.datum_args);
  if (cfg.target.empty()) fail(kUsage, "usage", "solve needs --for KEY");
  try {
    relations::kind_of_key(cfg.target);
  } catch (const std::exception& e) {
    fail(kUsage, "usage", e.what());
  }
  auto kb = load_kb(cfg);
  auto opts = relation_options(cfg);
  if (!opts.delta) opts.delta = delta_for(d, cfg);
  Rat x;
  try {
    x = relations::solve_datum(d, cfg.target, kb, opts);
  } catch (const relations::SolveError& e) {
    fail(kSolve, "solve", e.what());
  } catch (const GraphError& e) {
    fail(kEnumeration, "enumeration", e.what());
  } catch (const std::exception& e) {
    fail(kEvaluation, "evaluation", e.what());
  }
  if (!cfg.kb_path.empty()) {
    try {
      kb.save(cfg.kb_path);
    } catch (const std::exception& e) {
      fail(kKb, "kb", e.what());
    }
  }
  if (cfg.format == "record") {
    json j = {{"datum", d.str()}, {"key", cfg.target}, {"value", to_string(x)}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << to_string(x) << "\n";
  }
  return kOk;
}

int cmd_kb_init(const Config& cfg) {
  if (cfg.kb_path.empty()) fail(kUsage, "usage", "kb-init needs --kb PATH");
  try {
    relations::KnowledgeBase{}.save(cfg.kb_path);
  } catch (const std::exception& e) {
    fail(kKb, "kb", e.what());
  }
  return kOk;
}

int cmd_kb_show(const Config& cfg) {
  if (cfg.kb_path.empty()) fail(kUsage, "usage", "kb-show needs --kb PATH");
  std::cout << load_kb(cfg).serialize();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localization relations for mixed-spin-P fields on the quintic"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub, bool needs_datum) {
    if (needs_datum) sub->add_option("datum", cfg.datum_args, "g=G gamma=TOKENS d=D0,DINF")->required()->expected(3);
    sub->add_option("--kb", cfg.kb_path, "knowledge base file");
    sub->add_option("--format", cfg.format, "table or record")->check(CLI::IsMember({"table", "record"}));
  };
  auto add_eval = [&](CLI::App* sub) {
    sub->add_option("--delta", cfg.delta, "override the virtual dimension");
    sub->add_flag("--closed-form", cfg.closed_form, "evaluate genus-one single-flag brackets in closed form");
    sub->add_option("--max-nodes", cfg.max_nodes, "search-node limit of the graph enumeration");
  };

  auto* en = app.add_subcommand("enumerate", "list regular graphs of a datum");
  add_common(en, true);
  en->add_option("--max-nodes", cfg.max_nodes, "search-node limit of the graph enumeration");
  auto* ev = app.add_subcommand("eval", "contribution of every graph");
  add_common(ev, true);
  add_eval(ev);
  ev->add_option("--graph", cfg.graph_id, "only this graph id");
  auto* rel = app.add_subcommand("relation", "vanishing relation of a datum");
  add_common(rel, true);
  add_eval(rel);
  auto* sol = app.add_subcommand("solve", "solve the relation for one correlator");
  add_common(sol, true);
  add_eval(sol);
  sol->add_option("--for", cfg.target, "correlator key, e.g. GW(g=1,d=1)")->required();
  auto* init = app.add_subcommand("kb-init", "write a seeded knowledge base");
  add_common(init, false);
  auto* show = app.add_subcommand("kb-show", "print a knowledge base");
  add_common(show, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*en) return cmd_enumerate(cfg);
    if (*ev) return cmd_eval(cfg);
    if (*rel) return cmd_relation(cfg);
    if (*sol) return cmd_solve(cfg);
    if (*init) return cmd_kb_init(cfg);
    if (*show) return cmd_kb_show(cfg);
  } catch (const Failure& f) {
    std::cerr << "error: kind=" << f.kind << " code=" << f.code << " message=" << f.message << "\n";
    return f.code;
  }
  return kUsage;
}
