#include <doctest.h>

#include <random>

#include "cosetcx/errors.hpp"
#include "cosetcx/fundgroup.hpp"
#include "cosetcx/homology.hpp"

using namespace cosetcx;

namespace {

GroupPresentation parse(const char* text) { return GroupPresentation::from_text(text); }

const QuotientTarget& target(const std::string& name) {
  for (const auto& t : default_quotient_targets()) {
    if (t.name == name) return t;
  }
  FAIL("no target " << name);
  throw;
}

QuotientTarget cyclic2() {
  return {"C2", generate_group({Permutation::from_cycles("(0 1)", 2)}, 2)};
}

SimplicialComplex projective_plane() {
  return SimplicialComplex::from_facets({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                         {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
}

SimplicialComplex torus() {
  // 7-vertex triangulation.
  std::vector<Simplex> f;
  for (Vertex i = 0; i < 7; ++i) {
    f.push_back({i, (i + 1) % 7, (i + 3) % 7});
    f.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  for (auto& s : f) std::sort(s.begin(), s.end());
  return SimplicialComplex::from_facets(f);
}

}  // namespace

TEST_CASE("presentation text format") {
  auto p = parse("gens: 2\na b A B\na a\n1\n");
  CHECK(p.generators == 2);
  REQUIRE(p.relators.size() == 3);
  CHECK(p.relators[0] == Word{1, 2, -1, -2});
  CHECK(p.relators[2].empty());
  CHECK(GroupPresentation::from_text(p.to_text()) == p);
  CHECK(parse("gens: 1\na A a\n").relators[0] == Word{1});

  GroupPresentation big{30, {{27, -30, 1}}};
  CHECK(big.to_text() == "gens: 30\nx26 X29 a\n");
  CHECK(GroupPresentation::from_text(big.to_text()) == big);

  CHECK_THROWS_AS(parse("a b\n"), ParseError);
  CHECK_THROWS_AS(parse("gens: 1\nb\n"), ParseError);
}

TEST_CASE("edge-path presentations") {
  SUBCASE("tree") {
    auto tree = SimplicialComplex::from_facets({{0, 1}, {1, 2}, {1, 3}});
    auto e = edge_path_presentation(tree);
    CHECK(e.presentation.generators == 0);
    CHECK(e.presentation.relators.empty());
  }
  SUBCASE("hollow triangle") {
    auto e = edge_path_presentation(simplex_boundary(2));
    CHECK(e.presentation.generators == 1);
    CHECK(e.presentation.relators.empty());
    CHECK(e.generator_edges == std::vector<Simplex>{{1, 2}});
  }
  SUBCASE("counts follow the Euler formula for the 1-skeleton") {
    auto x = torus();
    auto e = edge_path_presentation(x);
    CHECK(e.presentation.generators == x.face_count(1) - x.face_count(0) + 1);
    CHECK(e.presentation.relators.size() == x.face_count(2));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(edge_path_presentation(SimplicialComplex::from_facets({{0}, {1}})), Disconnected);
    CHECK_THROWS_AS(edge_path_presentation(simplex_boundary(2), 9), UnknownVertex);
  }
}

TEST_CASE("abelianization") {
  CHECK(abelianization(parse("gens: 1\na a\n")) == Abelianization{0, {2}});
  CHECK(abelianization(parse("gens: 2\n")) == Abelianization{2, {}});
  CHECK(abelianization(parse("gens: 2\na b A B\n")) == Abelianization{2, {}});
  CHECK(abelianization(parse("gens: 0\n")).trivial());
  CHECK(abelianization(parse("gens: 2\na a\nb b b\n")).to_string() == "Z/6");
}

TEST_CASE("abelianized edge-path group equals H_1") {
  for (const auto& x : {simplex_boundary(2), simplex_boundary(3), projective_plane(), torus(),
                        barycentric_subdivision(projective_plane()).complex}) {
    auto e = edge_path_presentation(x);
    CHECK_NOTHROW(require_matches_first_homology(abelianization(e.presentation), reduced_homology(x)));
  }
  CHECK_THROWS_AS(require_matches_first_homology(Abelianization{1, {}}, reduced_homology(projective_plane())),
                  InvariantViolation);
}

TEST_CASE("Tietze simplification") {
  SUBCASE("<a | a> is trivial") {
    auto r = tietze_simplify(parse("gens: 1\na\n"));
    CHECK(r.presentation.generators == 0);
    CHECK(r.presentation.relators.empty());
    CHECK_FALSE(r.capped);
  }
  SUBCASE("free group is unchanged") {
    auto p = parse("gens: 1\n");
    CHECK(tietze_simplify(p).presentation == p);
  }
  SUBCASE("duplicate and conjugate relators are dropped") {
    auto r = tietze_simplify(parse("gens: 2\na a\nA A\na b a B\nb a B a\n"));
    CHECK(r.presentation.relators.size() == 2);
  }
  SUBCASE("simply connected complexes trivialize") {
    for (const auto& x : {simplex_boundary(3), full_simplex(3), barycentric_subdivision(simplex_boundary(3)).complex,
                          simplex_boundary(4)}) {
      auto g = fundamental_group(x);
      CHECK(g.simplified.presentation.generators == 0);
      CHECK(g.abelian.trivial());
    }
  }
  SUBCASE("projective plane reduces to Z/2") {
    auto g = fundamental_group(projective_plane());
    CHECK(g.simplified.presentation.generators == 1);
    CHECK(abelianization(g.simplified.presentation) == Abelianization{0, {2}});
  }
  SUBCASE("torus keeps two generators") {
    auto g = fundamental_group(torus());
    CHECK(g.simplified.presentation.generators == 2);
    CHECK(g.abelian == Abelianization{2, {}});
  }
  SUBCASE("step cap") {
    auto x = barycentric_subdivision(simplex_boundary(3)).complex;
    auto r = tietze_simplify(edge_path_presentation(x).presentation, TietzeOptions{5, 10'000});
    CHECK(r.capped);
    CHECK(r.presentation.generators > 0);
  }
}

TEST_CASE("Tietze preserves the abelianization on random presentations") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    GroupPresentation p;
    p.generators = 1 + rng() % 4;
    const std::size_t rels = rng() % 5;
    for (std::size_t i = 0; i < rels; ++i) {
      Word w;
      const std::size_t len = 1 + rng() % 6;
      for (std::size_t j = 0; j < len; ++j) {
        Letter l = static_cast<Letter>(1 + rng() % p.generators);
        w.push_back(rng() % 2 ? l : -l);
      }
      p.relators.push_back(free_reduce(w));
    }
    auto r = tietze_simplify(p);  // throws InvariantViolation on mismatch
    CHECK(abelianization(r.presentation) == abelianization(p));
    CHECK(r.presentation.generators <= p.generators);
  }
}

TEST_CASE("finite quotients") {
  SUBCASE("<a | a^2> onto C2") {
    auto v = find_finite_quotient(parse("gens: 1\na a\n"), cyclic2(), true);
    REQUIRE(v.is_refuted());
    CHECK(v.certificate["images"][0] == "(0 1)");
    CHECK(v.certificate["surjective"] == true);
  }
  SUBCASE("trivial presentation has only the trivial map") {
    auto v = find_finite_quotient(parse("gens: 0\n"), target("Alt5"), false);
    CHECK(v.is_verified());
    auto w = find_finite_quotient(parse("gens: 1\na\n"), target("S3"), false);
    CHECK(w.is_verified());
  }
  SUBCASE("<a, b | a^2, b^3, (ab)^5> maps onto Alt5 but not into S4") {
    auto p = parse("gens: 2\na a\nb b b\na b a b a b a b a b\n");
    CHECK(find_finite_quotient(p, target("S4"), false).is_verified());
    auto v = find_finite_quotient(p, target("Alt5"), true);
    REQUIRE(v.is_refuted());
    CHECK(v.certificate["image_order"] == 60);
  }
  SUBCASE("Z/3 has no surjection onto S3") {
    auto p = parse("gens: 1\na a a\n");
    CHECK(find_finite_quotient(p, target("S3"), true).is_verified());
    CHECK(find_finite_quotient(p, target("S3"), false).is_refuted());
  }
  SUBCASE("budget and size limits") {
    auto p = parse("gens: 3\na b A B\n");
    CHECK(find_finite_quotient(p, target("S5"), true, QuotientOptions{4, 10}).is_unknown());
    auto big = parse("gens: 5\n");
    auto v = find_finite_quotient(big, target("S2"), false);
    CHECK(v.is_unknown());
    CHECK(v.reason.find("presentation too large") != std::string::npos);
  }
}

TEST_CASE("connectivity certificates") {
  CHECK_THROWS_AS(connectivity_certificate(full_simplex(1), -2), PreconditionFailed);
  for (int k = -1; k <= 3; ++k) CHECK(connectivity_certificate(full_simplex(3), k).is_verified());

  auto circle = simplex_boundary(2);
  CHECK(connectivity_certificate(circle, 0).is_verified());
  CHECK(connectivity_certificate(circle, 1).is_refuted());

  CHECK(connectivity_certificate(SimplicialComplex{}, -1).is_refuted());
  CHECK(connectivity_certificate(SimplicialComplex::from_facets({{0}, {1}}), 0).is_refuted());

  auto s2 = simplex_boundary(3);
  CHECK(connectivity_certificate(s2, 1).is_verified());
  CHECK(connectivity_certificate(s2, 2).is_refuted());

  auto rp2 = connectivity_certificate(projective_plane(), 1);
  CHECK(rp2.is_refuted());
}

TEST_CASE("connectivity verdicts are monotone in k") {
  for (const auto& x : {full_simplex(2), simplex_boundary(3), simplex_boundary(4), torus(), projective_plane()}) {
    bool verified_above = false;
    for (int k = 3; k >= -1; --k) {
      auto v = connectivity_certificate(x, k);
      if (verified_above) CHECK(v.is_verified());
      verified_above = verified_above || v.is_verified();
    }
  }
}
