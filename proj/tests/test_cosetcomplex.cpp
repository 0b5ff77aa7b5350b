#include <doctest.h>

#include <set>

#include "cosetcx/cmcheck.hpp"
#include "cosetcx/cosetcomplex.hpp"
#include "cosetcx/errors.hpp"
#include "cosetcx/fundgroup.hpp"

using namespace cosetcx;

namespace {

GroupPtr s3() {
  return generate_group({Permutation::from_cycles("(0 1)", 3), Permutation::from_cycles("(0 1 2)", 3)}, 3);
}

Subgroup cyclic(const GroupPtr& g, const char* cycle) {
  return Subgroup::generated_by(g, {g->require_index(Permutation::from_cycles(cycle, g->degree()))});
}

SubgroupFamily s3_family() {
  auto g = s3();
  return SubgroupFamily(g, {cyclic(g, "(0 1)"), cyclic(g, "(0 1 2)")});
}

SubgroupFamily alt5_family() {
  auto g = generate_group({Permutation::from_cycles("(0 1 2 3 4)", 5), Permutation::from_cycles("(0 1 2)", 5)}, 5);
  return SubgroupFamily(g,
                        {stabilizer(g, 1), normalizer(g, cyclic(g, "(0 1 2 3 4)")), normalizer(g, cyclic(g, "(0 2 4)"))},
                        {"H1", "H2", "H3"});
}

}  // namespace

TEST_CASE("nerves") {
  CHECK(nerve({{0}, {1}}, 2).f_vector() == std::vector<std::size_t>{2});
  auto tri = nerve({{0, 1}, {1, 2}, {0, 2}}, 3);
  CHECK(tri == simplex_boundary(2));
  CHECK_THROWS_AS(nerve({{0}}, 2), NotACover);
  CHECK_THROWS_AS(nerve({{0, 5}}, 2), NotACover);

  auto g = s3();
  auto h = cyclic(g, "(0 1 2)");
  std::vector<std::vector<std::uint32_t>> cover;
  for (const auto& c : left_cosets(g, h)) cover.emplace_back(c.elements.begin(), c.elements.end());
  CHECK(nerve(cover, g->order()).f_vector() == std::vector<std::size_t>{2});
}

TEST_CASE("subgroup families") {
  auto g = s3();
  CHECK_THROWS_AS(SubgroupFamily(g, {cyclic(g, "(0 1)"), cyclic(g, "(0 1)")}), DuplicateSubgroup);
  CHECK_THROWS_AS(SubgroupFamily(g, {}), std::invalid_argument);
  auto other = s3();
  CHECK_THROWS_AS(SubgroupFamily(g, {Subgroup::whole(other)}), ParentMismatch);
  auto f = s3_family();
  CHECK(f.name(1) == "H1");
  CHECK(f.intersection(3).order() == 1);
  CHECK(f.subfamily(2).size() == 1);
}

TEST_CASE("coset complex of S3") {
  auto cc = coset_complex(s3_family());
  CHECK(cc.complex.f_vector() == std::vector<std::size_t>{5, 6});
  // Complete bipartite K_{3,2}.
  for (const auto& e : cc.complex.faces(1)) CHECK(cc.vertices[e[0]].color != cc.vertices[e[1]].color);
  CHECK_NOTHROW(cc.coloring.validate(cc.complex));
  CHECK(cc.fundamental_facet() == Simplex{0, 3});
  CHECK(is_fundamental_facet(cc.action, cc.fundamental_facet()));
  CHECK(cc.complex.vertex_name(0) == "H0:()");

  auto h = reduced_homology(cc.complex);
  CHECK(h.at(1).betti == 2);
}

TEST_CASE("single-member family gives a point") {
  auto g = s3();
  SubgroupFamily whole(g, {Subgroup::whole(g)});
  auto cc = coset_complex(whole);
  CHECK(cc.complex.f_vector() == std::vector<std::size_t>{1});
  for (int m = 0; m <= 3; ++m) CHECK(generation_verdict(whole, m).is_verified());
  auto r = cm_characterisation_via_subfamilies(whole);
  CHECK(r.homological.is_verified());
  CHECK(r.homotopy.is_verified());
}

TEST_CASE("generation") {
  auto f = s3_family();
  CHECK(union_generates(f));
  CHECK(generation_verdict(f, 1).is_verified());
  CHECK(generation_verdict(f, 2).is_refuted());
  CHECK_THROWS_AS(generation_verdict(f, -1), PreconditionFailed);

  auto g = s3();
  SubgroupFamily one(g, {cyclic(g, "(0 1)")});
  CHECK_FALSE(union_generates(one));
  CHECK(generation_verdict(one, 1).is_refuted());
  SubgroupFamily two(g, {cyclic(g, "(0 1)"), Subgroup::trivial(g)});
  CHECK_FALSE(union_generates(two));
  CHECK(generation_verdict(two, 1).is_refuted());
}

TEST_CASE("union generation matches connectivity on every pair of cyclic subgroups of S4") {
  auto g = generate_group({Permutation::from_cycles("(0 1)", 4), Permutation::from_cycles("(0 1 2 3)", 4)}, 4);
  std::set<std::vector<ElementIndex>> seen;
  std::vector<Subgroup> cyclics;
  for (ElementIndex x = 0; x < g->order(); ++x) {
    auto h = Subgroup::generated_by(g, {x});
    if (seen.insert(h.elements()).second) cyclics.push_back(h);
  }
  for (std::size_t i = 0; i < cyclics.size(); ++i) {
    for (std::size_t j = i + 1; j < cyclics.size(); ++j) {
      SubgroupFamily f(g, {cyclics[i], cyclics[j]});
      // coset_complex asserts connectivity == union_generates internally.
      auto cc = coset_complex(f);
      CHECK(is_connected(cc.complex) == union_generates(f));
    }
  }
}

TEST_CASE("Alt5 family") {
  auto f = alt5_family();
  CHECK(f.members()[0].order() == 12);
  CHECK(f.members()[1].order() == 10);
  CHECK(f.members()[2].order() == 6);
  CHECK(union_generates(f));
  auto cc = coset_complex(f);
  CHECK(cc.complex.f_vector() == std::vector<std::size_t>{21, 80, 60});

  auto fg = fundamental_group(cc.complex);
  CHECK(fg.raw.presentation.generators == 60);
  CHECK(fg.raw.presentation.relators.size() == 60);
  CHECK(fg.abelian.trivial());
  MESSAGE("simplified: " << fg.simplified.presentation.to_text());
  CHECK(fg.simplified.presentation.generators <= 4);

  auto v = connectivity_certificate(cc.complex, 1);
  CHECK(v.is_refuted());
  MESSAGE(v.to_json().dump());
}

TEST_CASE("Alt5 coset model and stabilizers") {
  auto f = alt5_family();
  auto cc = coset_complex(f);
  const Simplex c = cc.fundamental_facet();
  CHECK(is_fundamental_facet(cc.action, c));
  auto model = coset_model_isomorphism(cc.action, c);
  CHECK(model.verdict.is_verified());
  for (std::size_t m = 0; m < model.psi.size(); ++m) CHECK(model.psi[m] == m);
  for (std::size_t i = 0; i < 3; ++i) CHECK(model.model.family.members()[i] == f.members()[i]);

  auto fams = stabilizer_families(cc.action, c);
  REQUIRE(fams.size() == 3);
  CHECK(fams[2].size() == 1);
  CHECK(fams[2][0].order() == 1);
  CHECK(fams[1].size() == 3);
}

TEST_CASE("Alt5 subfamily characterisation") {
  auto r = cm_characterisation_via_subfamilies(alt5_family());
  CHECK(r.rows.size() == 7);
  CHECK(r.homological.is_verified());
  CHECK(r.homotopy.is_refuted());
  for (const auto& row : r.rows) {
    if (row.members.size() < 3) CHECK(row.connectivity.is_verified());
  }
}

TEST_CASE("S3 subfamily characterisation and higher generation") {
  auto f = s3_family();
  auto r = cm_characterisation_via_subfamilies(f);
  CHECK(r.homological.is_verified());
  auto cc = coset_complex(f);
  auto report = higher_generation_report(cc.action, cc.fundamental_facet());
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].generation.is_verified());
  CHECK(report.rows[1].f_vector == std::vector<std::size_t>{6});
  CHECK(report.verdict.is_verified());
}

TEST_CASE("actions") {
  auto x = SimplicialComplex::from_facets({{0, 1}});
  auto trivial = generate_group({}, 1);
  auto a = GroupAction::from_generator_images(trivial, x, {});
  CHECK(is_fundamental_facet(a, {0, 1}));
  auto fams = stabilizer_families(a, {0, 1});
  CHECK(fams[0].size() == 2);
  CHECK(fams[0][0] == fams[0][1]);
  CHECK_THROWS_AS(coset_model_isomorphism(a, {0, 1}), PreconditionFailed);
  auto report = higher_generation_report(a, {0, 1});
  CHECK(report.rows[0].generation.is_unknown());
  CHECK(report.rows[1].generation.is_verified());

  // Swapping the ends of an edge inside a path is not simplicial.
  auto path = SimplicialComplex::from_facets({{0, 1}, {1, 2}});
  auto c2 = generate_group({Permutation::from_cycles("(0 1)", 2)}, 2);
  CHECK_THROWS_AS(GroupAction::from_generator_images(c2, path, {{1, 0, 2}}), NotSimplicialAction);
  auto flip = GroupAction::from_generator_images(c2, path, {{2, 1, 0}});
  CHECK(is_fundamental_facet(flip, {0, 1}));
  CHECK_FALSE(is_fundamental_facet(GroupAction::from_generator_images(c2, path, {{0, 1, 2}}), {0, 1}));
  // A non-homomorphism: the generator has order 2 but its image has order 3.
  auto tri = simplex_boundary(2);
  CHECK_THROWS_AS(GroupAction::from_generator_images(c2, tri, {{1, 2, 0}}), NotSimplicialAction);
  CHECK_THROWS_AS(is_fundamental_facet(flip, {0, 2}), SimplexNotInComplex);
}
