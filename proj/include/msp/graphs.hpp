#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msp/algebra.hpp"

namespace msp {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Leg decoration: a narrow monodromy zeta_5^m or one of the broad symbols.
struct Monodromy {
  enum class Kind { zeta, rho, phi };
  Kind kind = Kind::rho;
  int m = 0;  // 1..4 when kind == zeta

  static Monodromy zeta(int m);
  static Monodromy rho() { return {Kind::rho, 0}; }
  static Monodromy phi() { return {Kind::phi, 0}; }
  bool operator==(const Monodromy& o) const { return kind == o.kind && m == o.m; }
  std::string str() const;  // z1..z4, rho, phi
};

// Parses the comma-separated grammar {z1..z4, rho, phi}; empty string -> no legs.
std::vector<Monodromy> parse_gamma(const std::string& text);
std::string gamma_str(const std::vector<Monodromy>& gamma);

enum class Level { zero, one, inf };
enum class EdgeClass { E0, Einf, E0inf };
enum class VertexClass { VS, V01, V02, V11 };

std::string level_str(Level l);
std::string edge_class_str(EdgeClass c);
std::string vertex_class_str(VertexClass c);

struct Vertex {
  int id = 0;
  Level level = Level::one;
  int genus = 0;
  std::vector<int> legs;  // indices into DecoratedGraph::gamma, sorted
  Rat d0 = 0;             // degree of L on the vertex curve (level 0 only)
  Rat dinf = 0;           // degree of N on the vertex curve (stable level-inf only)
};

// Endpoints are stored as (lower level, higher level): E0 joins level 0 to
// level 1, Einf joins level 1 to level inf, E0inf joins level 0 to level inf.
struct Edge {
  int id = 0;
  int u = 0, v = 0;
  EdgeClass cls = EdgeClass::E0;
  Rat d0 = 0, dinf = 0;
  Rat de() const { return d0 - dinf; }
};

struct DecoratedGraph {
  int g = 0;
  std::vector<Monodromy> gamma;
  Rat d0 = 0, dinf = 0;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  std::vector<int> incident_edges(int v) const;
  int valence(int v) const { return static_cast<int>(incident_edges(v).size()); }
  int h1() const;
  bool connected() const;
};

VertexClass classify_vertex(const DecoratedGraph& G, const Vertex& v);
bool is_stable(const DecoratedGraph& G, const Vertex& v);

// r_e in {1, 5}: 1 iff d_e is an integer.
int edge_r(const Edge& e);
// Order of the automorphism group of a level-inf edge moduli: -5 d_e + delta,
// delta = -1 iff the level-inf end is in V^{0,1}.
long gerbe_order(const DecoratedGraph& G, const Edge& e);
// Monodromy exponent m in 0..4 of L along the flag (e, v) at a level-inf
// vertex: exp(-2 pi i d_e) = zeta_5^m.
int flag_monodromy(const Edge& e);
// Monodromy exponents (0 meaning trivial/broad) of all flags and legs of a
// level-inf vertex.
std::vector<int> infinity_monodromies(const DecoratedGraph& G, const Vertex& v);
bool is_exceptional_sector(const std::vector<int>& ms);

// Structural validity: degree sums, genus, leg placement, vertex shapes and
// the monodromy/degree compatibility conditions. Returns the list of problems.
std::vector<std::string> validate(const DecoratedGraph& G);
bool is_flat(const DecoratedGraph& G);
bool is_regular(const DecoratedGraph& G);
DecoratedGraph flatten(const DecoratedGraph& G);

std::string canonical_form(const DecoratedGraph& G);
std::uint64_t automorphism_order(const DecoratedGraph& G);
// Literal search over vertex and edge permutations; for small graphs only.
std::uint64_t automorphism_order_bruteforce(const DecoratedGraph& G);

// Relabels vertices and edges into canonical order (stable serialization).
DecoratedGraph canonical_relabel(const DecoratedGraph& G);

std::string serialize(const DecoratedGraph& G);
DecoratedGraph deserialize(const std::string& text);
std::string describe(const DecoratedGraph& G);  // one-line human summary

struct EnumerationOptions {
  std::uint64_t max_nodes = 50'000'000;  // search nodes before a bound-violation error
  // Visit candidate decorations in reverse order. The result must not depend
  // on it; tests use this to check that deduplication is order independent.
  bool reverse_order = false;
};

struct EnumerationResult {
  std::vector<DecoratedGraph> graphs;    // regular flat graphs, canonical order
  std::vector<DecoratedGraph> excluded;  // flattened graphs containing E0inf edges
  // Flat candidates that reached the final check and were dropped as
  // irregular. Branches ruled out earlier by local pruning are not counted.
  std::size_t irregular = 0;
};

class BoundViolation : public GraphError {
 public:
  using GraphError::GraphError;
};

EnumerationResult enumerate_graphs(int g, const std::vector<Monodromy>& gamma, const Rat& d0, const Rat& dinf,
                                   const EnumerationOptions& opts = {});

// The graph singled out in the FJRW induction: one genus-g level-inf vertex
// with k = 7g - 2 + 5m edges of degree -2/5 to level-1 V^{0,1} vertices.
DecoratedGraph make_theta_special_graph(int g, int m);

}  // namespace msp
