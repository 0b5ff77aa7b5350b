#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cosetcx {

using Vertex = std::uint32_t;
/// Sorted ascending list of vertex ids.
using Simplex = std::vector<Vertex>;

/// A finite abstract simplicial complex, stored by its facets together with
/// the eagerly materialized set of all nonempty faces.
///
/// Faces of each dimension are kept in lexicographic order, which fixes the
/// iteration order of every algorithm built on top. The empty complex has
/// dimension -1.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Non-maximal input sets are absorbed; vertex ids need not be contiguous.
  /// `names` optionally labels vertices for reporting.
  static SimplicialComplex from_facets(std::vector<Simplex> sets,
                                       const std::map<Vertex, std::string>& names = {});

  int dimension() const { return static_cast<int>(faces_.size()) - 1; }
  bool empty() const { return vertices_.empty(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Simplex>& facets() const { return facets_; }
  /// All faces of the given dimension (0 <= dim <= dimension()).
  const std::vector<Simplex>& faces(int dim) const;
  std::size_t face_count(int dim) const;
  /// f_0, f_1, ..., f_dim.
  std::vector<std::size_t> f_vector() const;

  bool contains(const Simplex& s) const;
  /// Position of `s` inside faces(s.size() - 1).
  std::optional<std::size_t> face_index(const Simplex& s) const;
  std::optional<std::size_t> vertex_position(Vertex v) const;

  std::string vertex_name(Vertex v) const;
  std::string simplex_name(const Simplex& s) const;
  const std::map<Vertex, std::string>& names() const { return names_; }

  bool is_pure() const;

  bool operator==(const SimplicialComplex& other) const { return facets_ == other.facets_; }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Simplex> facets_;
  std::vector<std::vector<Simplex>> faces_;
  std::map<Vertex, std::string> names_;
};

/// Vertex coloring; balanced when it is a bijection onto {0..d} on every facet.
struct Coloring {
  std::map<Vertex, int> color;

  int operator()(Vertex v) const;
  /// Throws InvalidColoring unless every facet sees each color exactly once.
  void validate(const SimplicialComplex& x) const;
};

struct ChamberGraph {
  std::vector<Simplex> chambers;                  // the facets of X
  std::vector<std::vector<std::size_t>> adjacent;  // sorted neighbour lists

  bool is_connected() const;
  std::size_t edge_count() const;
  /// BFS distances from one chamber; unreachable chambers get SIZE_MAX.
  std::vector<std::size_t> distances_from(std::size_t source) const;
};

/// Parses one facet per line (whitespace-separated vertex names, `#` comments).
/// Vertices are numbered in order of first appearance.
SimplicialComplex parse_facet_list(std::string_view text);
std::string write_facet_list(const SimplicialComplex& x);

/// {tau : tau and sigma disjoint, tau u sigma in X}. Throws SimplexNotInComplex.
SimplicialComplex link(const SimplicialComplex& x, const Simplex& sigma);

/// Vertices of the subdivision are the nonempty simplices of X, numbered by
/// their position in the face index (dimension-major); facets are the
/// maximal chains under inclusion.
struct Subdivision {
  SimplicialComplex complex;
  std::vector<Simplex> barycenter_of;  // subdivision vertex -> simplex of X
};

Subdivision barycentric_subdivision(const SimplicialComplex& x);

/// Induced subcomplex of the barycentric subdivision spanned by barycenters of
/// simplices of dimension >= s. It is homotopy equivalent to the complement
/// of the (s-1)-skeleton of |X|; s = 0 gives the subdivision itself.
SimplicialComplex skeleton_complement_model(const SimplicialComplex& x, int s);

/// Throws UnknownVertex if some vertex of `subset` is not in X.
SimplicialComplex induced_subcomplex(const SimplicialComplex& x, const std::vector<Vertex>& subset);

/// Throws NotPure on impure input.
ChamberGraph chamber_graph(const SimplicialComplex& x);
bool is_chamber_complex(const SimplicialComplex& x);

/// Connected components of the 1-skeleton, as sorted vertex lists.
std::vector<std::vector<Vertex>> connected_components(const SimplicialComplex& x);
bool is_connected(const SimplicialComplex& x);

/// Induced subcomplex on the vertices whose color lies in `colors`.
SimplicialComplex color_restriction(const SimplicialComplex& x, const Coloring& c,
                                    const std::vector<int>& colors);

/// The boundary of the standard k-simplex on vertices 0..k.
SimplicialComplex simplex_boundary(int k);
/// The full k-simplex on vertices 0..k.
SimplicialComplex full_simplex(int k);

/// All nonempty subsets of a simplex, shortest first.
std::vector<Simplex> nonempty_faces(const Simplex& s);

}  // namespace cosetcx
