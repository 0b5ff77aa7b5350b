#include <doctest.h>

#include <random>
#include <set>

#include "cosetcx/buildings.hpp"
#include "cosetcx/errors.hpp"
#include "cosetcx/homology.hpp"

using namespace cosetcx;

namespace {

std::size_t gaussian_binomial(int n, int k, int p) {
  std::size_t num = 1;
  std::size_t den = 1;
  for (int i = 0; i < k; ++i) {
    std::size_t a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= static_cast<std::size_t>(p);
    for (int j = 0; j < i + 1; ++j) b *= static_cast<std::size_t>(p);
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

// Oracle: distinct point sets of spans of all k-tuples of vectors.
std::size_t brute_subspace_count(int n, int p, int k) {
  PrimeField field{n, p};
  std::set<std::string> seen;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  const std::size_t total = field.vector_count();
  while (true) {
    std::vector<std::vector<int>> vs;
    for (auto i : idx) vs.push_back(field.decode(i));
    auto u = span(n, p, vs);
    if (u.dim() == k) seen.insert(u.points.to_string());
    std::size_t pos = 0;
    while (pos < idx.size() && idx[pos] + 1 == total) idx[pos++] = 0;
    if (pos == idx.size()) break;
    ++idx[pos];
  }
  return seen.size();
}

}  // namespace

TEST_CASE("subspace enumeration") {
  CHECK(enumerate_subspaces(3, 2, 1).size() == 7);
  CHECK(enumerate_subspaces(3, 2, 2).size() == 7);
  CHECK(enumerate_subspaces(4, 2, 2).size() == 35);
  for (auto [n, p] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 3}, std::pair{2, 5}}) {
    for (int k = 0; k <= n; ++k) {
      auto subs = enumerate_subspaces(n, p, k);
      CHECK(subs.size() == gaussian_binomial(n, k, p));
      if (n <= 3) CHECK(subs.size() == brute_subspace_count(n, p, k));
      std::set<std::string> distinct;
      for (const auto& u : subs) {
        CHECK(u.dim() == k);
        CHECK(span(n, p, u.rref) == u);
        distinct.insert(u.points.to_string());
      }
      CHECK(distinct.size() == subs.size());
    }
  }
  CHECK(enumerate_subspaces(3, 2, 1).front().to_string() == "[100]");
  CHECK(enumerate_subspaces(3, 2, 2).front().to_string() == "[100,010]");
  CHECK_THROWS_AS(enumerate_subspaces(11, 2, 1), CapExceeded);
  CHECK_THROWS_AS(enumerate_subspaces(3, 4, 1), std::invalid_argument);
}

TEST_CASE("spans and intersections") {
  auto u = span(3, 2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  CHECK(u.dim() == 2);
  CHECK(u.to_string() == "[101,011]");
  auto e1 = span(3, 2, {{1, 0, 0}});
  auto e23 = span(3, 2, {{0, 1, 0}, {0, 0, 1}});
  CHECK(intersection_dim(e1, e23) == 0);
  CHECK(intersection_dim(u, e23) == 1);
  CHECK(span(3, 3, {{2, 0, 0}}) == span(3, 3, {{1, 0, 0}}));
}

TEST_CASE("flag complexes") {
  auto a2 = building_flag_complex(3, 2);
  CHECK(a2.complex.f_vector() == std::vector<std::size_t>{14, 21});
  CHECK(a2.group->order() == 168);
  CHECK(is_chamber_complex(a2.complex));
  CHECK(a2.complex.vertex_name(0) == "[100]");

  for (int p : {2, 3, 5}) {
    auto line = building_flag_complex(2, p);
    CHECK(line.complex.f_vector() == std::vector<std::size_t>{static_cast<std::size_t>(p) + 1});
  }

  auto a3 = building_flag_complex(4, 2);
  CHECK(a3.complex.face_count(0) == 65);
  CHECK(a3.complex.facets().size() == 315);
  CHECK_THROWS_AS(building_flag_complex(5, 2), CapExceeded);

  auto c = a2.chamber_of(standard_flag(3, 2));
  CHECK(a2.flag_of(c) == standard_flag(3, 2));
  CHECK_THROWS_AS(a2.chamber_of({standard_flag(3, 2)[0]}), NotFullFlag);
  CHECK_THROWS_AS(a2.chamber_of({reversed_flag(3, 2)[0], standard_flag(3, 2)[1]}), NotFullFlag);
}

TEST_CASE("gallery distance") {
  auto a2 = building_flag_complex(3, 2);
  auto c = a2.chamber_of(standard_flag(3, 2));
  auto c2 = a2.chamber_of(reversed_flag(3, 2));
  CHECK(gallery_distance(a2.complex, c, c) == 0);
  CHECK(gallery_distance(a2.complex, c, c2) == 3);

  auto impure = SimplicialComplex::from_facets({{0, 1}, {2}});
  CHECK_THROWS_AS(gallery_distance(impure, {0, 1}, {2}), NotChamberComplex);
  auto apart = SimplicialComplex::from_facets({{0, 1}, {2, 3}});
  CHECK_THROWS_AS(gallery_distance(apart, {0, 1}, {2, 3}), UnreachableChamber);
  CHECK_THROWS_AS(gallery_distance(apart, {0, 1}, {0}), SimplexNotInComplex);
}

TEST_CASE("Weyl distances") {
  for (int n : {2, 3, 4}) {
    auto b = building_flag_complex(n, 2);
    auto w = weyl_distance_typeA(b, standard_flag(n, 2), reversed_flag(n, 2));
    CHECK(w.is_longest());
    CHECK(w.length() == static_cast<std::size_t>(n * (n - 1) / 2));
    CHECK(weyl_distance_typeA(b, standard_flag(n, 2), standard_flag(n, 2)).length() == 0);
  }
  CHECK(weyl_distance_typeA(building_flag_complex(3, 2), standard_flag(3, 2), reversed_flag(3, 2)).to_string() == "321");

  // Exhaustive at n = 3: every call asserts the length against the gallery distance.
  auto a2 = building_flag_complex(3, 2);
  std::set<std::string> seen;
  for (const auto& c : a2.complex.facets()) {
    for (const auto& c2 : a2.complex.facets()) {
      seen.insert(weyl_distance_typeA(a2, a2.flag_of(c), a2.flag_of(c2)).to_string());
    }
  }
  CHECK(seen.size() == 6);

  // Sampled at n = 4.
  auto a3 = building_flag_complex(4, 2);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, a3.complex.facets().size() - 1);
  for (int t = 0; t < 200; ++t) {
    const auto& c = a3.complex.facets()[pick(rng)];
    const auto& c2 = a3.complex.facets()[pick(rng)];
    CHECK_NOTHROW(weyl_distance_typeA(a3, a3.flag_of(c), a3.flag_of(c2)));
  }
}

TEST_CASE("opposite chambers") {
  auto a2 = building_flag_complex(3, 2);
  auto opp = opposite_chambers(a2.complex);
  CHECK(opp.diameter == 3);
  CHECK(opp.pairs.size() == 168);
  // Oracle: flags (p < l), (q < L) are opposite iff p is off L and q is off l.
  std::size_t count = 0;
  const auto& fs = a2.complex.facets();
  for (const auto& c : fs) {
    for (const auto& c2 : fs) {
      auto f = a2.flag_of(c);
      auto g = a2.flag_of(c2);
      if (!g[1].contains(f[0]) && !f[1].contains(g[0])) ++count;
    }
  }
  CHECK(count == 168);
  for (auto [i, j] : opp.pairs) {
    CHECK(weyl_distance_typeA(a2, a2.flag_of(fs[i]), a2.flag_of(fs[j])).is_longest());
  }
}

TEST_CASE("opposite simplices") {
  auto a2 = building_flag_complex(3, 2);
  ChamberMetric m(a2.complex);
  Vertex e1 = a2.vertex_of(span(3, 2, {{1, 0, 0}}));
  Vertex e12 = a2.vertex_of(span(3, 2, {{1, 0, 0}, {0, 1, 0}}));
  Vertex e23 = a2.vertex_of(span(3, 2, {{0, 1, 0}, {0, 0, 1}}));
  Vertex e2 = a2.vertex_of(span(3, 2, {{0, 1, 0}}));
  CHECK_FALSE(opposite_simplices(a2, m, {e1}, {e12}));
  CHECK(opposite_simplices(a2, m, {e1}, {e23}));
  CHECK_FALSE(opposite_simplices(a2, m, {e1}, {e2}));
  CHECK_THROWS_AS(opposite_simplices(m, {e1}, {e1, e12}), DimensionMismatch);

  // Every vertex pair agrees with the complement test (the overload throws otherwise).
  std::size_t opposite_pairs = 0;
  for (Vertex v : a2.complex.vertices()) {
    for (Vertex w : a2.complex.vertices()) opposite_pairs += opposite_simplices(a2, m, {v}, {w}) ? 1 : 0;
  }
  CHECK(opposite_pairs == 56);

  auto a3 = building_flag_complex(4, 2);
  ChamberMetric m3(a3.complex);
  for (Vertex w : a3.complex.vertices()) CHECK_NOTHROW(opposite_simplices(a3, m3, {0}, {w}));
}

TEST_CASE("opposition complex") {
  auto a2 = building_flag_complex(3, 2);
  auto opp = opposition_complex(a2);
  CHECK(opp.complex.f_vector() == std::vector<std::size_t>{56, 168});
  CHECK(opp.complex.dimension() == a2.complex.dimension());
  auto h = reduced_homology(opp.complex);
  CHECK(h.concentrated_in(1));
  CHECK(h.at(1).betti == 113);
  REQUIRE(opp.action.has_value());

  auto c = a2.chamber_of(standard_flag(3, 2));
  auto c2 = a2.chamber_of(reversed_flag(3, 2));
  auto facet = opp.facet_of(c, c2);
  CHECK(is_fundamental_facet(*opp.action, facet));
  CHECK_THROWS_AS(opp.facet_of(c, c), SimplexNotInComplex);

  auto generic = opposition_complex(a2.complex);
  CHECK(generic.complex == opp.complex);
  CHECK_FALSE(generic.action.has_value());
}

TEST_CASE("Weyl transitivity") {
  auto a2 = building_flag_complex(3, 2);
  auto v = verify_weyl_transitivity(a2, a2.action);
  REQUIRE(v.is_verified());
  const auto& classes = v.certificate["classes"];
  CHECK(classes.size() == 6);
  std::size_t total = 0;
  for (const auto& c : classes) {
    CHECK(c["orbits"] == 1);
    total += c["pairs"].get<std::size_t>();
  }
  CHECK(total == 441);

  auto trivial = generate_group({}, 1);
  auto still = GroupAction::from_generator_images(trivial, a2.complex, {});
  CHECK(verify_weyl_transitivity(a2, still).is_refuted());

  auto line = building_flag_complex(2, 3);
  auto lv = verify_weyl_transitivity(line, line.action);
  CHECK(lv.is_verified());
  CHECK(lv.certificate["classes"].size() == 2);
  CHECK_THROWS_AS(verify_weyl_transitivity(line, a2.action), PreconditionFailed);
}

TEST_CASE("parabolic and Levi subgroups") {
  auto a2 = building_flag_complex(3, 2);
  auto r1 = parabolic_and_levi_subgroups(a2, 0);
  REQUIRE(r1.levis.size() == 2);
  for (const auto& l : r1.levis) {
    CHECK(l.order() == 6);
    CHECK(l.index() == 28);
  }
  for (const auto& p : r1.parabolics) CHECK(p.order() == 24);
  CHECK(r1.block_sizes[0] == std::vector<int>{1, 2});
  CHECK(r1.block_sizes[1] == std::vector<int>{2, 1});

  auto r0 = parabolic_and_levi_subgroups(a2, 1);
  REQUIRE(r0.levis.size() == 1);
  CHECK(r0.levis[0].order() == 1);
  CHECK(r0.parabolics[0].order() == 8);
  CHECK_THROWS_AS(parabolic_and_levi_subgroups(a2, 2), PreconditionFailed);

  auto b3 = building_flag_complex(3, 3);
  auto t = parabolic_and_levi_subgroups(b3, 1);
  CHECK(t.levis[0].order() == 8);
}

TEST_CASE("Levi coset complex models the opposition complex") {
  for (int p : {2, 3}) {
    auto b = building_flag_complex(3, p);
    auto opp = opposition_complex(b);
    auto facet = opp.facet_of(b.chamber_of(standard_flag(3, p)), b.chamber_of(reversed_flag(3, p)));
    auto model = coset_model_isomorphism(*opp.action, facet);
    CHECK(model.verdict.is_verified());
    auto levis = parabolic_and_levi_subgroups(b, 0).levis;
    std::set<std::vector<ElementIndex>> expected, got;
    for (const auto& l : levis) expected.insert(l.elements());
    for (const auto& h : model.model.family.members()) got.insert(h.elements());
    CHECK(expected == got);
  }
}
