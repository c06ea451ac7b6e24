#include "msp/relations.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "msp/gw.hpp"

namespace msp::relations {

namespace {

const char* kSeedKey = "FJRW(g=1,k=0)";

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return s;
}

std::string fjrw_key(int g, int k) { return "FJRW(g=" + std::to_string(g) + ",k=" + std::to_string(k) + ")"; }

}  // namespace

std::string kind_of_key(const std::string& key) {
  if (key.rfind("GW(", 0) == 0) return "GW";
  if (key.rfind("FJRW(", 0) == 0) return "FJRW";
  if (key.rfind("DTW(", 0) == 0) return "DTW-bracket";
  throw RelationError("unknown correlator key '" + key + "'");
}

KnowledgeBase::KnowledgeBase() { entries_[kSeedKey] = {Rat(1), "seed"}; }

std::optional<Rat> KnowledgeBase::value(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

void KnowledgeBase::set(const std::string& key, const Rat& value, const std::string& provenance) {
  kind_of_key(key);
  if (key.find('\t') != std::string::npos || key.find('\n') != std::string::npos)
    throw RelationError("correlator key contains a tab or newline");
  Rat v = value;
  v.canonicalize();
  entries_[key] = {v, sanitize(provenance)};
}

std::string KnowledgeBase::serialize() const {
  std::ostringstream os;
  for (const auto& [key, e] : entries_)
    os << kind_of_key(key) << '\t' << key << '\t' << to_string(e.value) << '\t' << e.provenance << '\n';
  return os.str();
}

KnowledgeBase KnowledgeBase::parse(const std::string& text) {
  KnowledgeBase kb;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
      auto tab = line.find('\t', start);
      if (tab == std::string::npos) break;
      f.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    f.push_back(line.substr(start));
    const std::string where = "knowledge base line " + std::to_string(lineno);
    if (f.size() != 4) throw RelationError(where + ": expected 4 tab-separated fields");
    std::string kind;
    try {
      kind = kind_of_key(f[1]);
    } catch (const RelationError&) {
      throw RelationError(where + ": unknown key '" + f[1] + "'");
    }
    if (kind != f[0]) throw RelationError(where + ": kind '" + f[0] + "' does not match key '" + f[1] + "'");
    Rat v;
    try {
      v = parse_rat(f[2]);
    } catch (const std::exception&) {
      throw RelationError(where + ": malformed rational '" + f[2] + "'");
    }
    kb.entries_[f[1]] = {v, f[3]};
  }
  return kb;
}

KnowledgeBase KnowledgeBase::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RelationError("cannot read knowledge base '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void KnowledgeBase::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw RelationError("cannot write knowledge base '" + path + "'");
  out << serialize();
  if (!out) throw RelationError("failed writing knowledge base '" + path + "'");
}

Rat Relation::constant() const {
  auto it = value.find(CorrProduct{});
  return it == value.end() ? Rat(0) : it->second;
}

std::vector<std::string> Relation::unknowns() const {
  std::set<std::string> keys;
  for (const auto& [p, c] : value) keys.insert(p.begin(), p.end());
  return {keys.begin(), keys.end()};
}

std::string Relation::str() const { return sym_value_str(value) + " = 0"; }

Relation substitute(const SymValue& v, const KnowledgeBase& kb) {
  Relation r;
  for (const auto& [p, c] : v) {
    CorrProduct rest;
    Rat coef = c;
    for (const auto& key : p) {
      if (auto val = kb.value(key))
        coef *= *val;
      else
        rest.push_back(key);
    }
    SymValue term{{rest, coef}};
    sym_add(r.value, term);
  }
  return r;
}

VdimResult msp_vdim(int g, const std::vector<Monodromy>& gamma, const Rat& d0, const Rat& dinf) {
  VdimResult res;
  long nrho = 0;
  bool narrow = false;
  for (const auto& m : gamma) {
    if (m.kind == Monodromy::Kind::rho)
      ++nrho;
    else
      narrow = true;
  }
  Rat delta = d0 + dinf + Rat(1 - g + nrho);
  if (!is_integer(delta)) throw RelationError("non-integral virtual dimension " + to_string(delta));
  res.delta = static_cast<int>(to_long(delta));
  if (narrow)
    res.warning = "virtual dimension formula is validated only for rho legs; got gamma=" + gamma_str(gamma);
  return res;
}

std::string Datum::str() const {
  return "g=" + std::to_string(g) + " gamma=" + gamma_str(gamma) + " d=" + to_string(d0) + "," + to_string(dinf);
}

RelationResult build_relation(const Datum& datum, const KnowledgeBase& kb, const RelationOptions& opts) {
  RelationResult res;
  res.datum = datum;
  if (opts.delta) {
    res.delta = *opts.delta;
  } else {
    VdimResult v = msp_vdim(datum.g, datum.gamma, datum.d0, datum.dinf);
    res.delta = v.delta;
    if (v.warning) res.warnings.push_back(*v.warning);
  }
  if (res.delta <= 0)
    throw RelationError("virtual dimension " + std::to_string(res.delta) + " of " + datum.str() +
                        " is not positive; no vanishing relation");
  EnumerationResult en = enumerate_graphs(datum.g, datum.gamma, datum.d0, datum.dinf, opts.enumeration);
  for (const auto& G : en.graphs) {
    GraphTerm term{G, {}};
    try {
      term.contribution = contrib::graph_contribution(G, res.delta, opts.eval);
    } catch (const std::exception& e) {
      throw RelationError("graph " + canonical_form(G) + ": " + e.what());
    }
    sym_add(res.raw, term.contribution);
    res.graphs.push_back(std::move(term));
  }
  res.relation = substitute(res.raw, kb);
  return res;
}

Rat solve_for(const Relation& r, const std::string& unknown) {
  Rat coef = 0, rest = 0;
  std::vector<std::string> blockers;
  bool nonlinear = false;
  for (const auto& [p, c] : r.value) {
    if (p.empty()) {
      rest += c;
    } else if (p.size() == 1 && p[0] == unknown) {
      coef += c;
    } else {
      for (const auto& k : p) {
        if (k == unknown)
          nonlinear = true;
        else
          blockers.push_back(k);
      }
    }
  }
  std::sort(blockers.begin(), blockers.end());
  blockers.erase(std::unique(blockers.begin(), blockers.end()), blockers.end());
  if (!blockers.empty()) {
    std::string msg = "unresolved unknowns besides " + unknown + ":";
    for (const auto& b : blockers) msg += " " + b;
    throw SolveError(SolveError::Kind::blocked, blockers, msg);
  }
  if (nonlinear) throw SolveError(SolveError::Kind::nonlinear, {}, "relation is not linear in " + unknown);
  if (coef == 0) throw SolveError(SolveError::Kind::degenerate, {}, "relation degenerate for unknown " + unknown);
  Rat x = -rest / coef;
  x.canonicalize();
  return x;
}

Datum dtw_capping_datum(const std::string& key) {
  contrib::DtwSignature sig = contrib::parse_dtw_key(key);
  Datum d;
  d.g = sig.g;
  const int n = static_cast<int>(sig.degrees.size() + sig.legs.size());
  // N-degree of the level-inf vertex plus that of each capping edge.
  Rat dinf = rat(-(2 * sig.g - 2 + n), 5);
  for (const Rat& de : sig.degrees) {
    dinf -= de;
    d.gamma.push_back(Monodromy::rho());
  }
  for (const auto& m : sig.legs) d.gamma.push_back(m);
  d.dinf = dinf;
  return d;
}

namespace {

// Solves every unknown dual-twisted bracket of `rel` that its capping datum
// isolates, smallest brackets first, until no further progress is made.
void resolve_brackets(const RelationResult& res, KnowledgeBase& kb, const RelationOptions& opts,
                      const std::string& target) {
  RelationOptions sub = opts;
  sub.delta.reset();
  std::set<std::string> tried;
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<std::pair<std::size_t, std::string>> pending;
    for (const auto& u : substitute(res.raw, kb).unknowns())
      if (u != target && kind_of_key(u) == "DTW-bracket" && !tried.count(u))
        pending.emplace_back(contrib::parse_dtw_key(u).degrees.size(), u);
    std::sort(pending.begin(), pending.end());
    for (const auto& [nflags, u] : pending) {
      Datum cap = dtw_capping_datum(u);
      if (cap.str() == res.datum.str()) continue;
      try {
        RelationResult capped = build_relation(cap, kb, sub);
        kb.set(u, solve_for(capped.relation, u), "relation " + cap.str());
        tried.insert(u);
        progress = true;
        break;  // smaller brackets may now unlock larger ones
      } catch (const SolveError&) {
      } catch (const RelationError&) {
      } catch (const GraphError&) {
      }
    }
  }
}

}  // namespace

Rat solve_datum(const Datum& datum, const std::string& target, KnowledgeBase& kb, const RelationOptions& opts) {
  RelationResult res = build_relation(datum, kb, opts);
  resolve_brackets(res, kb, opts, target);
  Rat x = solve_for(substitute(res.raw, kb), target);
  kb.set(target, x, "relation " + datum.str());
  return x;
}

Rat run_induction_gw(int g, int d, KnowledgeBase& kb, const RelationOptions& opts) {
  if (g < 0 || d < 1) throw RelationError("GW induction needs g >= 0 and d >= 1");
  Datum datum{g, {}, Rat(d), Rat(0)};
  return solve_datum(datum, gw::primary_key(g, d), kb, opts);
}

Rat run_induction_fjrw(int g, int k, KnowledgeBase& kb, const RelationOptions& opts) {
  const int rem = k - (7 * g - 2);
  if (g < 1 || rem < 0 || rem % 5 != 0)
    throw RelationError("FJRW induction needs k = 7g - 2 + 5m with m >= 0; got g=" + std::to_string(g) +
                        " k=" + std::to_string(k));
  const int m = rem / 5;
  Datum datum{g, {}, Rat(0), Rat(g + m)};
  return solve_datum(datum, fjrw_key(g, k), kb, opts);
}

}  // namespace msp::relations
