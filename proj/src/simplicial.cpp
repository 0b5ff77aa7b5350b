#include "cosetcx/simplicial.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "cosetcx/errors.hpp"

namespace cosetcx {

namespace {

void sort_unique(std::vector<Simplex>& list) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
}

bool is_subset(const Simplex& small, const Simplex& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<Simplex> nonempty_faces(const Simplex& s) {
  const std::size_t n = s.size();
  std::vector<Simplex> out;
  if (n == 0) return out;
  if (n > 24) throw CapExceeded("simplex too large to enumerate its faces");
  out.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) face.push_back(s[i]);
    }
    out.push_back(std::move(face));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
  return out;
}

SimplicialComplex SimplicialComplex::from_facets(std::vector<Simplex> sets,
                                                 const std::map<Vertex, std::string>& names) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  sets.erase(std::remove_if(sets.begin(), sets.end(), [](const Simplex& s) { return s.empty(); }),
             sets.end());
  sort_unique(sets);

  SimplicialComplex x;
  std::size_t max_size = 0;
  for (const auto& s : sets) max_size = std::max(max_size, s.size());
  x.faces_.resize(max_size);
  for (const auto& s : sets) {
    for (auto& face : nonempty_faces(s)) x.faces_[face.size() - 1].push_back(std::move(face));
  }
  for (auto& layer : x.faces_) sort_unique(layer);

  // A set is a facet iff no codimension-1 coface of it exists in the index.
  std::vector<std::vector<bool>> covered(x.faces_.size());
  for (std::size_t d = 0; d < x.faces_.size(); ++d) covered[d].assign(x.faces_[d].size(), false);
  for (std::size_t d = 1; d < x.faces_.size(); ++d) {
    for (const auto& s : x.faces_[d]) {
      for (std::size_t omit = 0; omit < s.size(); ++omit) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(omit));
        auto& layer = x.faces_[d - 1];
        auto it = std::lower_bound(layer.begin(), layer.end(), face);
        covered[d - 1][static_cast<std::size_t>(it - layer.begin())] = true;
      }
    }
  }
  for (std::size_t d = 0; d < x.faces_.size(); ++d) {
    for (std::size_t i = 0; i < x.faces_[d].size(); ++i) {
      if (!covered[d][i]) x.facets_.push_back(x.faces_[d][i]);
    }
  }
  std::sort(x.facets_.begin(), x.facets_.end());
  if (!x.faces_.empty()) {
    for (const auto& v : x.faces_[0]) x.vertices_.push_back(v[0]);
  }
  for (const auto& [v, name] : names) {
    if (std::binary_search(x.vertices_.begin(), x.vertices_.end(), v)) x.names_.emplace(v, name);
  }
  return x;
}

const std::vector<Simplex>& SimplicialComplex::faces(int dim) const {
  static const std::vector<Simplex> kNone;
  if (dim < 0 || dim > dimension()) return kNone;
  return faces_[static_cast<std::size_t>(dim)];
}

std::size_t SimplicialComplex::face_count(int dim) const { return faces(dim).size(); }

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& layer : faces_) f.push_back(layer.size());
  return f;
}

std::optional<std::size_t> SimplicialComplex::face_index(const Simplex& s) const {
  if (s.empty() || s.size() > faces_.size()) return std::nullopt;
  const auto& layer = faces_[s.size() - 1];
  auto it = std::lower_bound(layer.begin(), layer.end(), s);
  if (it == layer.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - layer.begin());
}

bool SimplicialComplex::contains(const Simplex& s) const {
  if (s.empty()) return true;
  return face_index(s).has_value();
}

std::optional<std::size_t> SimplicialComplex::vertex_position(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::string SimplicialComplex::vertex_name(Vertex v) const {
  auto it = names_.find(v);
  return it == names_.end() ? std::to_string(v) : it->second;
}

std::string SimplicialComplex::simplex_name(const Simplex& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += vertex_name(s[i]);
  }
  return out + "}";
}

bool SimplicialComplex::is_pure() const {
  for (const auto& f : facets_) {
    if (static_cast<int>(f.size()) != dimension() + 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

int Coloring::operator()(Vertex v) const {
  auto it = color.find(v);
  if (it == color.end()) throw InvalidColoring("vertex " + std::to_string(v) + " has no color");
  return it->second;
}

void Coloring::validate(const SimplicialComplex& x) const {
  const int d = x.dimension();
  for (const auto& f : x.facets()) {
    std::vector<bool> seen(static_cast<std::size_t>(d + 1), false);
    if (static_cast<int>(f.size()) != d + 1) {
      throw InvalidColoring("facet " + x.simplex_name(f) + " is not of top dimension");
    }
    for (Vertex v : f) {
      auto it = color.find(v);
      if (it == color.end() || it->second < 0 || it->second > d ||
          seen[static_cast<std::size_t>(it->second)]) {
        throw InvalidColoring("facet " + x.simplex_name(f) + " is not colored bijectively");
      }
      seen[static_cast<std::size_t>(it->second)] = true;
    }
  }
}

bool ChamberGraph::is_connected() const {
  if (chambers.empty()) return true;
  auto dist = distances_from(0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) {
    return d == std::numeric_limits<std::size_t>::max();
  });
}

std::size_t ChamberGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nbrs : adjacent) twice += nbrs.size();
  return twice / 2;
}

std::vector<std::size_t> ChamberGraph::distances_from(std::size_t source) const {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(chambers.size(), kInf);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    std::size_t at = queue.front();
    queue.pop_front();
    for (std::size_t next : adjacent[at]) {
      if (dist[next] == kInf) {
        dist[next] = dist[at] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------

SimplicialComplex parse_facet_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::unordered_map<std::string, Vertex> ids;
  std::map<Vertex, std::string> names;
  std::vector<Simplex> facets;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    Simplex facet;
    while (tokens >> token) {
      auto [it, inserted] = ids.emplace(token, static_cast<Vertex>(ids.size()));
      if (inserted) names.emplace(it->second, token);
      facet.push_back(it->second);
    }
    if (!facet.empty()) facets.push_back(std::move(facet));
  }
  return SimplicialComplex::from_facets(std::move(facets), names);
}

std::string write_facet_list(const SimplicialComplex& x) {
  std::string out;
  for (const auto& f : x.facets()) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += ' ';
      out += x.vertex_name(f[i]);
    }
    out += '\n';
  }
  return out;
}

SimplicialComplex link(const SimplicialComplex& x, const Simplex& sigma) {
  Simplex s = sigma;
  std::sort(s.begin(), s.end());
  if (!x.contains(s)) throw SimplexNotInComplex(x.simplex_name(s));
  std::vector<Simplex> sets;
  for (const auto& f : x.facets()) {
    if (!is_subset(s, f)) continue;
    Simplex rest;
    std::set_difference(f.begin(), f.end(), s.begin(), s.end(), std::back_inserter(rest));
    sets.push_back(std::move(rest));
  }
  return SimplicialComplex::from_facets(std::move(sets), x.names());
}

Subdivision barycentric_subdivision(const SimplicialComplex& x) {
  Subdivision out;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (int d = 0; d <= x.dimension(); ++d) {
    offset.push_back(total);
    total += x.face_count(d);
    for (const auto& s : x.faces(d)) out.barycenter_of.push_back(s);
  }
  auto id_of = [&](const Simplex& s) {
    return static_cast<Vertex>(offset[s.size() - 1] + *x.face_index(s));
  };
  std::vector<Simplex> chains;
  for (const auto& f : x.facets()) {
    Simplex order = f;
    do {
      Simplex chain;
      Simplex prefix;
      for (Vertex v : order) {
        prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
        chain.push_back(id_of(prefix));
      }
      chains.push_back(std::move(chain));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  std::map<Vertex, std::string> names;
  for (std::size_t i = 0; i < out.barycenter_of.size(); ++i) {
    names.emplace(static_cast<Vertex>(i), x.simplex_name(out.barycenter_of[i]));
  }
  out.complex = SimplicialComplex::from_facets(std::move(chains), names);
  return out;
}

SimplicialComplex skeleton_complement_model(const SimplicialComplex& x, int s) {
  if (s < 0 || s > std::max(x.dimension(), 0)) {
    throw std::invalid_argument("skeleton_complement_model: s must lie in [0, dim X]");
  }
  auto sub = barycentric_subdivision(x);
  std::vector<Vertex> keep;
  for (std::size_t i = 0; i < sub.barycenter_of.size(); ++i) {
    if (static_cast<int>(sub.barycenter_of[i].size()) - 1 >= s) keep.push_back(static_cast<Vertex>(i));
  }
  return induced_subcomplex(sub.complex, keep);
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& x, const std::vector<Vertex>& subset) {
  Simplex keep = subset;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (Vertex v : keep) {
    if (!x.vertex_position(v)) throw UnknownVertex(std::to_string(v));
  }
  std::vector<Simplex> sets;
  for (const auto& f : x.facets()) {
    Simplex part;
    std::set_intersection(f.begin(), f.end(), keep.begin(), keep.end(), std::back_inserter(part));
    if (!part.empty()) sets.push_back(std::move(part));
  }
  return SimplicialComplex::from_facets(std::move(sets), x.names());
}

ChamberGraph chamber_graph(const SimplicialComplex& x) {
  if (!x.is_pure()) throw NotPure("chamber graph needs a pure complex");
  ChamberGraph g;
  g.chambers = x.facets();
  g.adjacent.resize(g.chambers.size());
  std::map<Simplex, std::vector<std::size_t>> by_ridge;
  for (std::size_t i = 0; i < g.chambers.size(); ++i) {
    const auto& c = g.chambers[i];
    if (c.size() < 2) continue;
    for (std::size_t omit = 0; omit < c.size(); ++omit) {
      Simplex ridge = c;
      ridge.erase(ridge.begin() + static_cast<std::ptrdiff_t>(omit));
      by_ridge[ridge].push_back(i);
    }
  }
  // Zero-dimensional complexes: any two points meet in the empty face.
  if (x.dimension() == 0) {
    for (std::size_t i = 0; i < g.chambers.size(); ++i) {
      for (std::size_t j = 0; j < g.chambers.size(); ++j) {
        if (i != j) g.adjacent[i].push_back(j);
      }
    }
  }
  for (const auto& [ridge, members] : by_ridge) {
    for (std::size_t a : members) {
      for (std::size_t b : members) {
        if (a != b) g.adjacent[a].push_back(b);
      }
    }
  }
  for (auto& nbrs : g.adjacent) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

bool is_chamber_complex(const SimplicialComplex& x) {
  if (!x.is_pure()) return false;
  return chamber_graph(x).is_connected();
}

std::vector<std::vector<Vertex>> connected_components(const SimplicialComplex& x) {
  const auto& verts = x.vertices();
  std::vector<std::size_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& e : x.faces(1)) {
    auto a = find(*x.vertex_position(e[0]));
    auto b = find(*x.vertex_position(e[1]));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::vector<Vertex>> groups;
  for (std::size_t i = 0; i < verts.size(); ++i) groups[find(i)].push_back(verts[i]);
  std::vector<std::vector<Vertex>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

bool is_connected(const SimplicialComplex& x) {
  return !x.empty() && connected_components(x).size() == 1;
}

SimplicialComplex color_restriction(const SimplicialComplex& x, const Coloring& c,
                                    const std::vector<int>& colors) {
  c.validate(x);
  std::vector<Vertex> keep;
  for (Vertex v : x.vertices()) {
    if (std::find(colors.begin(), colors.end(), c(v)) != colors.end()) keep.push_back(v);
  }
  return induced_subcomplex(x, keep);
}

SimplicialComplex simplex_boundary(int k) {
  if (k < 1) throw std::invalid_argument("simplex_boundary needs k >= 1");
  std::vector<Simplex> facets;
  for (int omit = 0; omit <= k; ++omit) {
    Simplex f;
    for (int v = 0; v <= k; ++v) {
      if (v != omit) f.push_back(static_cast<Vertex>(v));
    }
    facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_facets(std::move(facets));
}

SimplicialComplex full_simplex(int k) {
  Simplex f;
  for (int v = 0; v <= k; ++v) f.push_back(static_cast<Vertex>(v));
  return SimplicialComplex::from_facets({f});
}

}  // namespace cosetcx
