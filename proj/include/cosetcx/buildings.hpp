#pragma once

#include <bitset>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cosetcx/cosetcomplex.hpp"
#include "cosetcx/permgroup.hpp"
#include "cosetcx/simplicial.hpp"
#include "cosetcx/verdict.hpp"

namespace cosetcx {

/// Upper bound on p^n - 1, the number of nonzero vectors of F_p^n.
inline constexpr std::size_t kMaxBuildingPoints = 1024;
using PointSet = std::bitset<kMaxBuildingPoints>;

/// A subspace of F_p^n in reduced row echelon form, together with the set of
/// its nonzero vectors (point = code - 1, code = sum v_i p^i).
struct Subspace {
  int n = 0;
  int p = 2;
  std::vector<std::vector<int>> rref;
  PointSet points;

  int dim() const { return static_cast<int>(rref.size()); }
  bool contains(const Subspace& other) const { return (other.points & ~points).none(); }
  /// RREF rows as digit strings, e.g. "[100,010]"; "[]" for the zero space.
  std::string to_string() const;
  bool operator==(const Subspace& other) const { return n == other.n && p == other.p && rref == other.rref; }
};

/// Span of arbitrary vectors (coordinates in F_p).
Subspace span(int n, int p, const std::vector<std::vector<int>>& vectors);
int intersection_dim(const Subspace& a, const Subspace& b);

/// All subspaces of the given dimension, ordered by pivot columns and then by
/// the free entries. Throws CapExceeded when p^n - 1 > kMaxBuildingPoints and
/// std::invalid_argument for non-prime p.
std::vector<Subspace> enumerate_subspaces(int n, int p, int dim);

/// A chain U_1 < ... < U_t of subspaces; full when t = n - 1.
using Flag = std::vector<Subspace>;

/// <e_1> < <e_1, e_2> < ... and <e_n> < <e_n, e_{n-1}> < ...
Flag standard_flag(int n, int p);
Flag reversed_flag(int n, int p);

/// The flag complex of proper nonzero subspaces of F_p^n with the action of
/// GL_n(F_p). Vertex ids run through the subspaces by dimension, then in
/// enumeration order.
struct Building {
  int n = 0;
  int p = 2;
  std::vector<Subspace> subspaces;  // vertex id -> subspace
  SimplicialComplex complex;
  GroupPtr group;
  GroupAction action;

  Vertex vertex_of(const Subspace& u) const;
  /// Throws NotFullFlag unless the flag is full and strictly increasing.
  Simplex chamber_of(const Flag& flag) const;
  Flag flag_of(const Simplex& chamber) const;

  std::unordered_map<PointSet, Vertex> index;
};

/// Throws CapExceeded when the space or the group is too large.
Building building_flag_complex(int n, int p, std::size_t group_cap = FiniteGroup::kDefaultCap);

/// BFS distance in the chamber graph. Throws NotChamberComplex for impure X,
/// SimplexNotInComplex when an argument is not a chamber, and
/// UnreachableChamber when no gallery exists.
std::size_t gallery_distance(const SimplicialComplex& x, const Simplex& c, const Simplex& c2);

/// All-pairs gallery distances of a chamber complex.
class ChamberMetric {
 public:
  static constexpr std::size_t kMaxChambers = 5000;

  /// Throws NotChamberComplex, or CapExceeded beyond kMaxChambers.
  explicit ChamberMetric(const SimplicialComplex& x);

  const SimplicialComplex& complex() const { return x_; }
  const std::vector<Simplex>& chambers() const { return x_.facets(); }
  std::size_t chamber_index(const Simplex& c) const;
  std::size_t distance(std::size_t i, std::size_t j) const { return dist_[i * count_ + j]; }
  std::size_t diameter() const { return diameter_; }
  bool opposite(std::size_t i, std::size_t j) const { return distance(i, j) == diameter_; }
  /// Indices of the chambers that contain `s`.
  std::vector<std::size_t> chambers_containing(const Simplex& s) const;

 private:
  SimplicialComplex x_;
  std::size_t count_ = 0;
  std::vector<std::size_t> dist_;
  std::size_t diameter_ = 0;
};

/// A permutation w of {0, ..., n-1}; images[i] = w(i).
struct WeylElement {
  std::vector<int> images;

  std::size_t length() const;  // number of inversions
  bool is_longest() const;
  /// One-line notation on 1..n, e.g. "321".
  std::string to_string() const;
  bool operator==(const WeylElement&) const = default;
  auto operator<=>(const WeylElement&) const = default;
};

/// Relative position of two full flags from the intersection dimensions.
/// Asserts length(w) equals the gallery distance in the building.
WeylElement weyl_distance_typeA(const Building& b, const Flag& c, const Flag& c2);

struct OppositeChambers {
  std::size_t diameter = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // ordered, indices into facets()
};

OppositeChambers opposite_chambers(const SimplicialComplex& x);

/// sigma and sigma' are opposite when every chamber through either one is
/// opposite some chamber through the other. Throws DimensionMismatch.
bool opposite_simplices(const ChamberMetric& metric, const Simplex& s, const Simplex& s2);
bool opposite_simplices(const SimplicialComplex& x, const Simplex& s, const Simplex& s2);
/// Same test, additionally checked for vertices against U + U' = F_p^n with
/// U and U' meeting trivially; disagreement throws InvariantViolation.
bool opposite_simplices(const Building& b, const ChamberMetric& metric, const Simplex& s, const Simplex& s2);

/// Vertices are opposite vertex pairs (v, v'); each pair of opposite chambers
/// (C, C') contributes the facet of pairs matched inside C and C'.
struct OppositionComplex {
  SimplicialComplex complex;
  std::vector<std::pair<Vertex, Vertex>> pairs;  // vertex id -> (v, v')
  std::optional<GroupAction> action;

  Vertex vertex_of(Vertex v, Vertex v2) const;
  /// The facet of Opp corresponding to a pair of opposite chambers.
  Simplex facet_of(const Simplex& c, const Simplex& c2) const;
};

/// Throws NotChamberComplex.
OppositionComplex opposition_complex(const SimplicialComplex& x);
/// With the diagonal action g.(v, v') = (g.v, g.v').
OppositionComplex opposition_complex(const GroupAction& action);
/// With the GL action; vertex opposition is also checked by complements.
OppositionComplex opposition_complex(const Building& b);

/// Every class of ordered chamber pairs with the same Weyl distance is a
/// single orbit of `action`. Throws PreconditionFailed when the action is not
/// on b.complex and CapExceeded beyond 10^7 ordered pairs.
Verdict verify_weyl_transitivity(const Building& b, const GroupAction& action);

struct ParabolicLevi {
  int k = 0;                           // dimension of the faces
  std::vector<Simplex> faces;          // k-faces of the standard chamber
  std::vector<Simplex> opposite_faces; // matching faces of the reversed chamber
  std::vector<Subgroup> parabolics;
  std::vector<Subgroup> levis;
  std::vector<std::vector<int>> block_sizes;
};

/// Stabilizers of the k-faces of the standard chamber and their intersections
/// with the stabilizers of the opposite faces of the reversed chamber. Each
/// Levi is checked against the enumerated block-diagonal subgroup (throws
/// InvariantViolation). Requires 0 <= k <= n - 2.
ParabolicLevi parabolic_and_levi_subgroups(const Building& b, int k);

}  // namespace cosetcx
