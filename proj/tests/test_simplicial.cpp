#include <doctest.h>

#include <algorithm>
#include <random>

#include "cosetcx/errors.hpp"
#include "cosetcx/homology.hpp"
#include "cosetcx/simplicial.hpp"

using namespace cosetcx;

namespace {

SimplicialComplex hollow_triangle() { return SimplicialComplex::from_facets({{0, 1}, {1, 2}, {0, 2}}); }

}  // namespace

TEST_CASE("from_facets") {
  auto t = hollow_triangle();
  CHECK(t.dimension() == 1);
  CHECK(t.face_count(1) == 3);
  CHECK(t.f_vector() == std::vector<std::size_t>{3, 3});

  auto solid = SimplicialComplex::from_facets({{0, 1, 2}});
  std::size_t faces = 0;
  for (auto f : solid.f_vector()) faces += f;
  CHECK(faces == 7);

  auto absorbed = SimplicialComplex::from_facets({{0, 1, 2}, {0, 1}, {2}, {1, 0}});
  CHECK(absorbed.facets().size() == 1);

  SimplicialComplex empty = SimplicialComplex::from_facets({});
  CHECK(empty.dimension() == -1);
  CHECK(empty.empty());
}

TEST_CASE("face closure invariant") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Simplex> sets;
    for (int k = 0; k < 6; ++k) {
      Simplex s;
      for (Vertex v = 0; v < 7; ++v) {
        if (rng() % 3 == 0) s.push_back(v);
      }
      if (s.size() > 4) s.resize(4);
      sets.push_back(s);
    }
    auto x = SimplicialComplex::from_facets(sets);
    for (int d = 1; d <= x.dimension(); ++d) {
      for (const auto& s : x.faces(d)) {
        for (std::size_t omit = 0; omit < s.size(); ++omit) {
          Simplex face = s;
          face.erase(face.begin() + static_cast<long>(omit));
          CHECK(x.contains(face));
        }
      }
    }
    // Facets are maximal.
    for (const auto& a : x.facets()) {
      for (const auto& b : x.facets()) {
        if (a != b) CHECK_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      }
    }
  }
}

TEST_CASE("facet-list text format") {
  auto x = parse_facet_list("# a square\na b\nb c\nc d\nd a\n");
  CHECK(x.f_vector() == std::vector<std::size_t>{4, 4});
  CHECK(x.vertex_name(0) == "a");
  auto again = parse_facet_list(write_facet_list(x));
  CHECK(again.f_vector() == x.f_vector());
}

TEST_CASE("links") {
  auto sphere = simplex_boundary(3);
  auto lv = link(sphere, {0});
  CHECK(lv.f_vector() == std::vector<std::size_t>{3, 3});
  auto le = link(sphere, {0, 1});
  CHECK(le.dimension() == 0);
  CHECK(le.f_vector() == std::vector<std::size_t>{2});
  CHECK(link(sphere, {}) == sphere);
  CHECK(link(sphere, {0, 1, 2}).empty());
  CHECK_THROWS_AS(link(sphere, {0, 9}), SimplexNotInComplex);
}

TEST_CASE("link of a link") {
  auto x = simplex_boundary(4);
  for (const auto& sigma : x.faces(0)) {
    auto l = link(x, sigma);
    for (const auto& tau : l.faces(0)) {
      Simplex both;
      std::set_union(sigma.begin(), sigma.end(), tau.begin(), tau.end(), std::back_inserter(both));
      CHECK(link(l, tau) == link(x, both));
    }
  }
}

TEST_CASE("barycentric subdivision") {
  auto edge = SimplicialComplex::from_facets({{0, 1}});
  auto sub = barycentric_subdivision(edge).complex;
  CHECK(sub.f_vector() == std::vector<std::size_t>{3, 2});

  auto hex = barycentric_subdivision(hollow_triangle()).complex;
  CHECK(hex.f_vector() == std::vector<std::size_t>{6, 6});

  auto sphere = simplex_boundary(3);
  auto bs = barycentric_subdivision(sphere).complex;
  CHECK(bs.f_vector() == std::vector<std::size_t>{14, 36, 24});
}

TEST_CASE("skeleton complement model") {
  auto sphere = simplex_boundary(3);
  CHECK(skeleton_complement_model(sphere, 0) == barycentric_subdivision(sphere).complex);
  auto model = skeleton_complement_model(sphere, 1);
  CHECK(model.vertices().size() == 10);
  CHECK(model.dimension() == 1);
  CHECK(model.face_count(1) == 12);
  auto h = reduced_homology(model);
  CHECK(h.concentrated_in(1));
  CHECK(h.at(1).betti == 3);
}

TEST_CASE("induced subcomplexes") {
  auto sphere = simplex_boundary(3);
  CHECK(induced_subcomplex(sphere, sphere.vertices()) == sphere);
  CHECK(induced_subcomplex(sphere, {}).empty());
  CHECK(induced_subcomplex(sphere, {0, 1, 2}).f_vector() == std::vector<std::size_t>{3, 3, 1});
  CHECK_THROWS_AS(induced_subcomplex(sphere, {42}), UnknownVertex);
}

TEST_CASE("chamber graphs") {
  auto sphere = simplex_boundary(3);
  auto g = chamber_graph(sphere);
  CHECK(g.chambers.size() == 4);
  CHECK(g.edge_count() == 6);
  CHECK(g.is_connected());
  CHECK(is_chamber_complex(sphere));

  auto two = SimplicialComplex::from_facets({{0, 1, 2}, {3, 4, 5}});
  CHECK_FALSE(chamber_graph(two).is_connected());
  CHECK_FALSE(is_chamber_complex(two));

  auto bowtie = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3, 4}});
  CHECK_FALSE(is_chamber_complex(bowtie));

  auto impure = SimplicialComplex::from_facets({{0, 1, 2}, {3, 4}});
  CHECK_THROWS_AS(chamber_graph(impure), NotPure);
  CHECK_FALSE(is_chamber_complex(impure));
}

TEST_CASE("colorings") {
  auto square = SimplicialComplex::from_facets({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Coloring c{{{0, 0}, {1, 1}, {2, 0}, {3, 1}}};
  CHECK_NOTHROW(c.validate(square));
  CHECK(color_restriction(square, c, {0, 1}) == square);
  auto only0 = color_restriction(square, c, {0});
  CHECK(only0.dimension() == 0);
  CHECK(only0.vertices() == std::vector<Vertex>{0, 2});

  Coloring bad{{{0, 0}, {1, 0}, {2, 0}, {3, 1}}};
  CHECK_THROWS_AS(bad.validate(square), InvalidColoring);
  CHECK_THROWS_AS(color_restriction(square, bad, {0}), InvalidColoring);
}

TEST_CASE("connectivity of the 1-skeleton") {
  CHECK(is_connected(hollow_triangle()));
  CHECK_FALSE(is_connected(SimplicialComplex::from_facets({{0}, {1}})));
  CHECK_FALSE(is_connected(SimplicialComplex{}));
  CHECK(connected_components(SimplicialComplex::from_facets({{0, 1}, {2}})).size() == 2);
}
