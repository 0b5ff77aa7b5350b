#include "cosetcx/cosetcomplex.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "cosetcx/errors.hpp"

namespace cosetcx {

namespace {

std::vector<std::uint32_t> nonempty_masks(std::size_t n) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1u << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  return masks;
}

std::vector<std::size_t> mask_members(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i) {
    if (mask & (1u << i)) out.push_back(i);
  }
  return out;
}

ElementIndex generator_index(const GroupPtr& g, std::size_t i) { return g->require_index(g->generators()[i]); }

}  // namespace

// ---------------------------------------------------------------------------

SubgroupFamily::SubgroupFamily(GroupPtr parent, std::vector<Subgroup> members, std::vector<std::string> names)
    : parent_(std::move(parent)), members_(std::move(members)), names_(std::move(names)) {
  if (members_.empty()) throw std::invalid_argument("subgroup family must be nonempty");
  if (members_.size() > 31) throw std::invalid_argument("subgroup family larger than 31 members");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].parent() != parent_) throw ParentMismatch("family member " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j) {
      if (members_[i] == members_[j]) {
        throw DuplicateSubgroup("members " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < members_.size(); ++i) names_.push_back("H" + std::to_string(i));
  }
  if (names_.size() != members_.size()) throw std::invalid_argument("one name per family member");
}

SubgroupFamily SubgroupFamily::subfamily(std::uint32_t mask) const {
  std::vector<Subgroup> members;
  std::vector<std::string> names;
  for (std::size_t i : mask_members(mask)) {
    if (i >= members_.size()) throw std::invalid_argument("subfamily mask out of range");
    members.push_back(members_[i]);
    names.push_back(names_[i]);
  }
  return SubgroupFamily(parent_, std::move(members), std::move(names));
}

Subgroup SubgroupFamily::intersection(std::uint32_t mask) const {
  std::vector<Subgroup> chosen;
  for (std::size_t i : mask_members(mask)) chosen.push_back(members_.at(i));
  return intersect(chosen);
}

nlohmann::json SubgroupFamily::to_json() const {
  nlohmann::json members = nlohmann::json::array();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    members.push_back({{"name", names_[i]}, {"order", members_[i].order()}, {"index", members_[i].index()}});
  }
  return {{"group_order", parent_->order()}, {"members", members}};
}

// ---------------------------------------------------------------------------

GroupAction GroupAction::from_generator_images(GroupPtr group, SimplicialComplex x,
                                               const std::vector<std::vector<Vertex>>& generator_images) {
  const std::size_t n = x.vertices().size();
  if (generator_images.size() != group->generators().size()) {
    throw NotSimplicialAction("expected images for " + std::to_string(group->generators().size()) + " generators");
  }
  std::vector<std::vector<std::uint32_t>> gen_pos;
  for (const auto& images : generator_images) {
    if (images.size() != n) throw NotSimplicialAction("generator image list has the wrong length");
    std::vector<std::uint32_t> pos(n);
    std::vector<bool> hit(n, false);
    for (std::size_t p = 0; p < n; ++p) {
      auto q = x.vertex_position(images[p]);
      if (!q || hit[*q]) throw NotSimplicialAction("generator does not permute the vertices");
      hit[*q] = true;
      pos[p] = static_cast<std::uint32_t>(*q);
    }
    gen_pos.push_back(std::move(pos));
  }
  for (std::size_t i = 0; i < gen_pos.size(); ++i) {
    for (const auto& f : x.facets()) {
      Simplex image;
      for (Vertex v : f) image.push_back(x.vertices()[gen_pos[i][*x.vertex_position(v)]]);
      std::sort(image.begin(), image.end());
      if (!x.contains(image)) {
        throw NotSimplicialAction("generator " + std::to_string(i) + " sends " + x.simplex_name(f) +
                                  " outside the complex");
      }
    }
  }

  GroupAction action;
  action.group_ = group;
  action.table_.assign(group->order() * n, 0);
  std::vector<bool> known(group->order(), false);
  std::iota(action.table_.begin(), action.table_.begin() + static_cast<long>(n), 0u);
  known[group->identity()] = true;
  std::deque<ElementIndex> queue{group->identity()};
  std::vector<ElementIndex> gens;
  for (std::size_t i = 0; i < gen_pos.size(); ++i) gens.push_back(generator_index(group, i));
  std::vector<std::uint32_t> composed(n);
  while (!queue.empty()) {
    const ElementIndex a = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const ElementIndex b = group->multiply(gens[i], a);
      for (std::size_t p = 0; p < n; ++p) composed[p] = gen_pos[i][action.table_[a * n + p]];
      auto row = action.table_.begin() + static_cast<long>(b * n);
      if (known[b]) {
        if (!std::equal(composed.begin(), composed.end(), row)) {
          throw NotSimplicialAction("vertex images do not extend to a group action");
        }
        continue;
      }
      std::copy(composed.begin(), composed.end(), row);
      known[b] = true;
      queue.push_back(b);
    }
  }
  action.complex_ = std::move(x);
  return action;
}

Vertex GroupAction::apply(ElementIndex g, Vertex v) const {
  const auto p = complex_.vertex_position(v);
  if (!p) throw UnknownVertex(std::to_string(v));
  const std::size_t n = complex_.vertices().size();
  return complex_.vertices()[table_[g * n + *p]];
}

Simplex GroupAction::apply(ElementIndex g, const Simplex& s) const {
  Simplex out;
  out.reserve(s.size());
  for (Vertex v : s) out.push_back(apply(g, v));
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup GroupAction::stabilizer(Vertex v) const {
  std::vector<ElementIndex> members;
  for (ElementIndex g = 0; g < group_->order(); ++g) {
    if (apply(g, v) == v) members.push_back(g);
  }
  return Subgroup::from_closed_set(group_, std::move(members));
}

Subgroup GroupAction::setwise_stabilizer(const Simplex& s) const {
  std::vector<ElementIndex> members;
  for (ElementIndex g = 0; g < group_->order(); ++g) {
    if (apply(g, s) == s) members.push_back(g);
  }
  return Subgroup::from_closed_set(group_, std::move(members));
}

// ---------------------------------------------------------------------------

Simplex CosetComplex::fundamental_facet() const {
  Simplex facet;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v].representative == family.parent()->identity()) facet.push_back(static_cast<Vertex>(v));
  }
  return facet;
}

SimplicialComplex nerve(const std::vector<std::vector<std::uint32_t>>& cover, std::size_t universe) {
  std::vector<Simplex> containing(universe);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (std::uint32_t x : cover[i]) {
      if (x >= universe) throw NotACover("element " + std::to_string(x) + " outside the ambient set");
      containing[x].push_back(static_cast<Vertex>(i));
    }
  }
  for (std::size_t x = 0; x < universe; ++x) {
    if (containing[x].empty()) throw NotACover("element " + std::to_string(x) + " is not covered");
    std::sort(containing[x].begin(), containing[x].end());
    containing[x].erase(std::unique(containing[x].begin(), containing[x].end()), containing[x].end());
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (cover[i].empty()) throw NotACover("cover member " + std::to_string(i) + " is empty");
  }
  return SimplicialComplex::from_facets(std::move(containing));
}

bool union_generates(const SubgroupFamily& family) {
  std::vector<ElementIndex> all;
  for (const auto& h : family.members()) all.insert(all.end(), h.elements().begin(), h.elements().end());
  return subgroup_closure(family.parent(), all).order() == family.parent()->order();
}

CosetComplex coset_complex(const SubgroupFamily& family) {
  const GroupPtr& g = family.parent();
  const std::size_t n = family.size();
  std::vector<CosetTable> tables;
  std::vector<Vertex> offset;
  std::vector<CosetVertex> vertices;
  std::map<Vertex, std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    tables.push_back(coset_table(family.members()[i]));
    offset.push_back(static_cast<Vertex>(vertices.size()));
    for (const auto& c : tables.back().cosets) {
      names[static_cast<Vertex>(vertices.size())] = family.name(i) + ":" + g->element(c.representative).to_cycles();
      vertices.push_back(CosetVertex{i, c.representative});
    }
  }

  const std::uint32_t all = (1u << n) - 1;
  std::vector<Simplex> facets;
  for (const auto& c : left_cosets(g, family.intersection(all))) {
    Simplex f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(offset[i] + tables[i].coset_of[c.representative]);
    facets.push_back(std::move(f));
  }
  SimplicialComplex complex = SimplicialComplex::from_facets(std::move(facets), names);

  std::vector<std::size_t> expected(n, 0);
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    expected[static_cast<std::size_t>(std::popcount(mask)) - 1] += family.intersection(mask).index();
  }
  if (complex.f_vector() != expected) {
    throw InvariantViolation("coset complex face counts differ from the intersection-coset counts");
  }

  if (g->order() <= kNerveCrossCheckLimit) {
    std::vector<std::vector<std::uint32_t>> cover;
    for (const auto& t : tables) {
      for (const auto& c : t.cosets) cover.emplace_back(c.elements.begin(), c.elements.end());
    }
    if (!(nerve(cover, g->order()) == complex)) {
      throw InvariantViolation("coset complex differs from the nerve of the coset cover");
    }
  }

  Coloring coloring;
  for (std::size_t v = 0; v < vertices.size(); ++v) coloring.color[static_cast<Vertex>(v)] = static_cast<int>(vertices[v].color);

  std::vector<std::vector<Vertex>> images;
  for (std::size_t s = 0; s < g->generators().size(); ++s) {
    const ElementIndex gen = generator_index(g, s);
    std::vector<Vertex> img(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      const std::size_t c = vertices[v].color;
      img[v] = offset[c] + tables[c].coset_of[g->multiply(gen, vertices[v].representative)];
    }
    images.push_back(std::move(img));
  }
  GroupAction action = GroupAction::from_generator_images(g, complex, images);

  if (is_connected(complex) != union_generates(family)) {
    throw InvariantViolation("connectivity of the coset complex disagrees with generation by the union");
  }
  return CosetComplex{family, std::move(complex), std::move(vertices), std::move(coloring), std::move(action)};
}

Verdict generation_verdict(const SubgroupFamily& family, int m, const ConnectivityOptions& options) {
  if (m < 0) throw PreconditionFailed("generation index must be >= 0");
  const CosetComplex cc = coset_complex(family);
  Verdict v = connectivity_certificate(cc.complex, m - 1, options);
  if (m == 1 && v.is_verified() != union_generates(family)) {
    throw InvariantViolation("1-generation verdict disagrees with the union generating the group");
  }
  if (!v.is_unknown()) v.certificate["f_vector"] = cc.complex.f_vector();
  return v;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void require_fundamental(const GroupAction& action, const Simplex& facet) {
  if (!is_fundamental_facet(action, facet)) {
    throw PreconditionFailed(action.complex().simplex_name(facet) + " is not a fundamental facet");
  }
}

}  // namespace

bool is_fundamental_facet(const GroupAction& action, const Simplex& facet) {
  const SimplicialComplex& x = action.complex();
  const GroupPtr& g = action.group();
  if (!std::binary_search(x.facets().begin(), x.facets().end(), facet)) {
    throw SimplexNotInComplex(x.simplex_name(facet) + " is not a facet");
  }
  const auto faces_of_c = nonempty_faces(facet);
  for (int k = 0; k <= x.dimension(); ++k) {
    const auto& faces = x.faces(k);
    std::vector<std::size_t> parent(faces.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t s = 0; s < g->generators().size(); ++s) {
      const ElementIndex gen = generator_index(g, s);
      for (std::size_t i = 0; i < faces.size(); ++i) {
        const std::size_t j = *x.face_index(action.apply(gen, faces[i]));
        parent[find_root(parent, i)] = find_root(parent, j);
      }
    }
    std::set<std::size_t> orbits;
    for (std::size_t i = 0; i < faces.size(); ++i) orbits.insert(find_root(parent, i));
    std::set<std::size_t> met;
    std::size_t c_faces = 0;
    for (const auto& sigma : faces_of_c) {
      if (static_cast<int>(sigma.size()) != k + 1) continue;
      ++c_faces;
      if (!met.insert(find_root(parent, *x.face_index(sigma))).second) return false;
    }
    if (met.size() != orbits.size() || c_faces != orbits.size()) return false;
  }
  return true;
}

std::vector<std::vector<Subgroup>> stabilizer_families(const GroupAction& action, const Simplex& facet) {
  require_fundamental(action, facet);
  std::vector<Subgroup> vertex_stab;
  for (Vertex v : facet) vertex_stab.push_back(action.stabilizer(v));
  std::vector<std::vector<Subgroup>> families(facet.size());
  std::vector<Simplex> faces = nonempty_faces(facet);
  std::sort(faces.begin(), faces.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& sigma : faces) {
    Subgroup setwise = action.setwise_stabilizer(sigma);
    std::vector<Subgroup> parts;
    for (Vertex v : sigma) {
      parts.push_back(vertex_stab[static_cast<std::size_t>(std::find(facet.begin(), facet.end(), v) - facet.begin())]);
    }
    if (!(setwise == intersect(parts))) {
      throw InvariantViolation("stabilizer of " + action.complex().simplex_name(sigma) +
                               " is not the intersection of its vertex stabilizers");
    }
    families[sigma.size() - 1].push_back(std::move(setwise));
  }
  return families;
}

CosetModel coset_model_isomorphism(const GroupAction& action, const Simplex& facet) {
  require_fundamental(action, facet);
  const SimplicialComplex& x = action.complex();
  const GroupPtr& g = action.group();
  std::vector<Subgroup> stabs;
  std::vector<std::string> names;
  for (Vertex v : facet) {
    stabs.push_back(action.stabilizer(v));
    names.push_back("Stab(" + x.vertex_name(v) + ")");
  }
  std::optional<SubgroupFamily> family;
  try {
    family.emplace(g, stabs, names);
  } catch (const DuplicateSubgroup& e) {
    throw PreconditionFailed(std::string("vertex stabilizers of the facet coincide: ") + e.what());
  }
  CosetComplex model = coset_complex(*family);

  std::vector<Vertex> psi(model.vertices.size());
  for (std::size_t m = 0; m < psi.size(); ++m) {
    const auto& cv = model.vertices[m];
    psi[m] = action.apply(cv.representative, facet[cv.color]);
  }

  auto fail = [&](const std::string& why) {
    return CosetModel{std::move(model), std::move(psi), Verdict::refuted({{"failure", why}}, why)};
  };

  std::vector<Vertex> sorted_psi = psi;
  std::sort(sorted_psi.begin(), sorted_psi.end());
  if (std::adjacent_find(sorted_psi.begin(), sorted_psi.end()) != sorted_psi.end() || sorted_psi != x.vertices()) {
    return fail("psi is not a bijection on vertices");
  }
  if (model.complex.dimension() != x.dimension()) return fail("dimensions differ");
  for (int k = 0; k <= x.dimension(); ++k) {
    if (model.complex.face_count(k) != x.face_count(k)) return fail("face counts differ in dimension " + std::to_string(k));
    for (const auto& sigma : model.complex.faces(k)) {
      Simplex image;
      for (Vertex v : sigma) image.push_back(psi[v]);
      std::sort(image.begin(), image.end());
      if (!x.contains(image)) return fail("psi sends a simplex outside the complex");
    }
  }
  for (std::size_t s = 0; s < g->generators().size(); ++s) {
    const ElementIndex gen = generator_index(g, s);
    for (std::size_t m = 0; m < psi.size(); ++m) {
      if (psi[model.action.apply(gen, static_cast<Vertex>(m))] != action.apply(gen, psi[m])) {
        return fail("psi is not equivariant");
      }
    }
  }

  nlohmann::json orders = nlohmann::json::array();
  for (const auto& h : stabs) orders.push_back(h.order());
  Verdict v = Verdict::verified({{"vertices", psi.size()},
                                 {"facets", x.facets().size()},
                                 {"stabilizer_orders", orders},
                                 {"checked", {"bijective", "simplices both ways", "equivariant"}}},
                                "coset model isomorphism verified");
  return CosetModel{std::move(model), std::move(psi), std::move(v)};
}

HigherGenerationReport higher_generation_report(const GroupAction& action, const Simplex& facet,
                                                const ConnectivityOptions& options) {
  const SimplicialComplex& x = action.complex();
  if (!cm_over(x, Coefficients::integers()).verdict.is_verified()) {
    throw PreconditionFailed("complex is not CM over Z");
  }
  const int d = x.dimension();
  const auto families = stabilizer_families(action, facet);
  HigherGenerationReport report;
  Status overall = Status::Verified;
  for (int k = 0; k <= d; ++k) {
    HigherGenerationRow row;
    row.k = k;
    const auto& members = families[static_cast<std::size_t>(k)];
    for (const auto& h : members) row.member_orders.push_back(h.order());
    std::optional<SubgroupFamily> family;
    try {
      std::vector<std::string> names;
      for (std::size_t j = 0; j < members.size(); ++j) names.push_back("P" + std::to_string(k) + "." + std::to_string(j));
      family.emplace(action.group(), members, names);
    } catch (const DuplicateSubgroup&) {
      row.generation = Verdict::unknown("stabilizer family has repeated subgroups");
      row.sphericity = row.generation;
      overall = combine(overall, Status::Unknown);
      report.rows.push_back(std::move(row));
      continue;
    }
    const CosetComplex cc = coset_complex(*family);
    row.f_vector = cc.complex.f_vector();
    row.generation = connectivity_certificate(cc.complex, d - k - 1, options);
    row.sphericity = concentration_certificate(reduced_homology(cc.complex), d - k);
    overall = combine(overall, combine(row.generation.status, row.sphericity.status));
    report.rows.push_back(std::move(row));
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"k", r.k}, {"generation", std::string(to_string(r.generation.status))},
                    {"sphericity", std::string(to_string(r.sphericity.status))}});
  }
  report.verdict.status = overall;
  report.verdict.certificate = {{"rows", rows}};
  report.verdict.reason = overall == Status::Verified ? "every stabilizer family is (d-k)-generating and spherical"
                                                      : "some stabilizer family not verified";
  return report;
}

SubfamilyReport cm_characterisation_via_subfamilies(const SubgroupFamily& family, Coefficients coeff,
                                                    const ConnectivityOptions& options) {
  const CosetComplex full = coset_complex(family);
  SubfamilyReport report;
  const SubfamilyRow* first_failure = nullptr;
  Status homotopy = Status::Verified;
  for (std::uint32_t mask : nonempty_masks(family.size())) {
    SubfamilyRow row;
    row.members = mask_members(mask);
    const CosetComplex sub = coset_complex(family.subfamily(mask));
    row.f_vector = sub.complex.f_vector();
    row.required = static_cast<int>(row.members.size()) - 2;
    row.acyclic = is_k_acyclic(sub.complex, row.required, coeff);
    row.connectivity = connectivity_certificate(sub.complex, row.required, options);
    homotopy = combine(homotopy, row.connectivity.status);
    report.rows.push_back(std::move(row));
  }
  for (const auto& row : report.rows) {
    if (!row.acyclic) {
      first_failure = &row;
      break;
    }
  }
  auto names_of = [&](const std::vector<std::size_t>& members) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i : members) out.push_back(family.name(i));
    return out;
  };
  if (first_failure) {
    report.homological = Verdict::refuted({{"subfamily", names_of(first_failure->members)},
                                           {"required", first_failure->required}},
                                          "subfamily coset complex not " + std::to_string(first_failure->required) +
                                              "-acyclic over " + coeff.name());
  } else {
    report.homological = Verdict::verified({{"subfamilies", report.rows.size()}, {"coefficients", coeff.name()}},
                                           "every subfamily coset complex is (|J|-2)-acyclic");
  }
  if (homotopy == Status::Verified) {
    report.homotopy = Verdict::verified({{"subfamilies", report.rows.size()}},
                                        "every subfamily coset complex is (|J|-2)-connected");
  } else {
    for (const auto& row : report.rows) {
      if (row.connectivity.status == homotopy) {
        report.homotopy = row.connectivity;
        report.homotopy.certificate["subfamily"] = names_of(row.members);
        break;
      }
    }
  }
  if (cm_over(full.complex, coeff).verdict.status != report.homological.status) {
    throw InvariantViolation("subfamily criterion disagrees with the direct CM check over " + coeff.name());
  }
  return report;
}

}  // namespace cosetcx
