#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msp/algebra.hpp"
#include "msp/contrib.hpp"
#include "msp/graphs.hpp"
#include "msp/symbolic.hpp"

namespace msp::relations {

class RelationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by solve_for. `blockers` lists the correlators that are still
// unknown besides the target (empty for a degenerate relation).
class SolveError : public std::runtime_error {
 public:
  enum class Kind { degenerate, blocked, nonlinear };
  SolveError(Kind kind, std::vector<std::string> blockers, const std::string& msg)
      : std::runtime_error(msg), kind(kind), blockers(std::move(blockers)) {}
  Kind kind;
  std::vector<std::string> blockers;
};

struct KbEntry {
  Rat value;
  std::string provenance;
};

// Known invariant values keyed by canonical correlator keys. Every base starts
// with the seed FJRW(g=1,k=0) = 1.
class KnowledgeBase {
 public:
  KnowledgeBase();

  static KnowledgeBase load(const std::string& path);  // throws RelationError
  void save(const std::string& path) const;
  static KnowledgeBase parse(const std::string& text);
  std::string serialize() const;

  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<Rat> value(const std::string& key) const;
  void set(const std::string& key, const Rat& value, const std::string& provenance);
  const std::map<std::string, KbEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, KbEntry> entries_;
};

// Record kind of a key: GW, FJRW or DTW-bracket.
std::string kind_of_key(const std::string& key);

// constant + sum of coeff * product = 0.
struct Relation {
  SymValue value;  // the empty product holds the constant

  Rat constant() const;
  // Correlator keys occurring in the relation, sorted.
  std::vector<std::string> unknowns() const;
  bool is_trivial() const { return value.empty(); }
  std::string str() const;  // "c0 + c * KEY + ... = 0"
};

// Replaces every known key by its value.
Relation substitute(const SymValue& v, const KnowledgeBase& kb);

struct VdimResult {
  int delta = 0;
  std::optional<std::string> warning;
};
// delta = d0 + dinf + 1 - g + #rho. Validated only for rho legs or no legs;
// other legs get a warning.
VdimResult msp_vdim(int g, const std::vector<Monodromy>& gamma, const Rat& d0, const Rat& dinf);

struct Datum {
  int g = 0;
  std::vector<Monodromy> gamma;
  Rat d0 = 0, dinf = 0;
  std::string str() const;  // g=1 gamma=rho d=0,0
};

struct RelationOptions {
  std::optional<int> delta;  // overrides msp_vdim
  contrib::EvalOptions eval;
  EnumerationOptions enumeration;
};

struct GraphTerm {
  DecoratedGraph graph;
  SymValue contribution;
};

struct RelationResult {
  Datum datum;
  int delta = 0;
  std::vector<std::string> warnings;
  std::vector<GraphTerm> graphs;  // in enumeration order
  SymValue raw;                   // sum of contributions before substitution
  Relation relation;              // after substitution of kb values
};

// Sums the contributions of all regular graphs of the datum. Evaluation
// errors are rethrown as RelationError naming the graph.
RelationResult build_relation(const Datum& datum, const KnowledgeBase& kb, const RelationOptions& opts = {});

// Solves a relation that is linear in `unknown` with every other term known.
Rat solve_for(const Relation& r, const std::string& unknown);

// Datum whose relation isolates a dual-twisted bracket: the level-inf vertex
// of the key, with every flag capped by a level-inf edge to an unstable
// level-1 vertex carrying a rho leg.
Datum dtw_capping_datum(const std::string& dtw_key);

// Solves `target` from the datum, first solving any unknown dual-twisted
// bracket through its capping datum. Records every solved value in kb.
Rat solve_datum(const Datum& datum, const std::string& target, KnowledgeBase& kb, const RelationOptions& opts = {});

// Relation of (g, empty, (d, 0)) solved for N_{g,d}.
Rat run_induction_gw(int g, int d, KnowledgeBase& kb, const RelationOptions& opts = {});
// k = 7g - 2 + 5m; relation of (g, empty, (0, g + m)) solved for Theta_{g,k}.
Rat run_induction_fjrw(int g, int k, KnowledgeBase& kb, const RelationOptions& opts = {});

}  // namespace msp::relations
