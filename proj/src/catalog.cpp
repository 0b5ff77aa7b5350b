#include "cosetcx/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "cosetcx/errors.hpp"

namespace cosetcx {

namespace {

const std::vector<std::string> kChecks = {"cm",     "homotopy-cm", "generation", "higher-generation", "subfamilies",
                                          "levi",   "weyl",        "skeleton",   "walker",            "shelling"};

std::size_t power(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::size_t gaussian_binomial(int n, int k, int p) {
  std::size_t num = 1;
  std::size_t den = 1;
  for (int i = 0; i < k; ++i) {
    num *= power(static_cast<std::size_t>(p), n - i) - 1;
    den *= power(static_cast<std::size_t>(p), i + 1) - 1;
  }
  return num / den;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

void require_params(const ExampleId& id, std::size_t count) {
  if (id.params.size() != count) {
    throw UnknownExample(id.name + " takes " + std::to_string(count) + " parameter(s)");
  }
}

Subgroup cyclic(const GroupPtr& g, const char* cycle) {
  return Subgroup::generated_by(g, {g->require_index(Permutation::from_cycles(cycle, g->degree()))});
}

void fill_from_coset_complex(NamedExample& ex, const SubgroupFamily& family) {
  auto cc = coset_complex(family);
  ex.group = family.parent();
  ex.complex = cc.complex;
  ex.family = cc.family;
  ex.action = cc.action;
  ex.fundamental_facet = cc.fundamental_facet();
  ex.coloring = cc.coloring;
}

// Stabilizers of the vertices of `facet`, one per label.
SubgroupFamily facet_family(const GroupAction& action, const Simplex& facet,
                            const std::vector<std::string>& labels) {
  std::vector<Subgroup> members;
  for (Vertex v : facet) members.push_back(action.stabilizer(v));
  return SubgroupFamily(action.group(), std::move(members), labels);
}

NamedExample build_alt5() {
  NamedExample ex;
  ex.description = "Alt5 with Stab(1), N(<(0 1 2 3 4)>), N(<(0 2 4)>): Z-acyclic and CM over Z, not simply connected";
  auto g = generate_group({Permutation::from_cycles("(0 1 2 3 4)", 5), Permutation::from_cycles("(0 1 2)", 5)}, 5);
  SubgroupFamily family(g, {stabilizer(g, 1), normalizer(g, cyclic(g, "(0 1 2 3 4)")), normalizer(g, cyclic(g, "(0 2 4)"))},
                        {"H1", "H2", "H3"});
  fill_from_coset_complex(ex, family);
  return ex;
}

NamedExample build_s3() {
  NamedExample ex;
  ex.description = "S3 with <(0 1)> and <(0 1 2)>: the complete bipartite graph K_{3,2}";
  auto g = generate_group({Permutation::from_cycles("(0 1)", 3), Permutation::from_cycles("(0 1 2)", 3)}, 3);
  fill_from_coset_complex(ex, SubgroupFamily(g, {cyclic(g, "(0 1)"), cyclic(g, "(0 1 2)")}, {"H1", "H2"}));
  return ex;
}

NamedExample build_boundary(int k) {
  if (k < 1 || k > 12) throw CapExceeded("simplex_boundary needs 1 <= k <= 12");
  NamedExample ex;
  ex.description = "boundary of the " + std::to_string(k) + "-simplex";
  ex.complex = simplex_boundary(k);
  return ex;
}

NamedExample build_building(int n, int p, const CatalogOptions& options) {
  NamedExample ex;
  ex.description = "flag complex of proper nonzero subspaces of F_" + std::to_string(p) + "^" + std::to_string(n) +
                   " with GL_" + std::to_string(n) + "(F_" + std::to_string(p) + ")";
  auto b = std::make_shared<Building>(building_flag_complex(n, p, options.group_cap));
  ex.building = b;
  ex.group = b->group;
  ex.complex = b->complex;
  ex.action = b->action;
  Simplex facet = b->chamber_of(standard_flag(n, p));
  ex.fundamental_facet = facet;
  Coloring c;
  for (Vertex v : ex.complex.vertices()) c.color[v] = b->subspaces[v].dim() - 1;
  ex.coloring = c;
  std::vector<std::string> labels;
  for (Vertex v : facet) labels.push_back("P" + std::to_string(b->subspaces[v].dim()));
  ex.family = facet_family(*ex.action, facet, labels);
  return ex;
}

NamedExample build_opposition(int n, int p, const CatalogOptions& options) {
  NamedExample ex;
  ex.description = "opposition complex of the flag complex of F_" + std::to_string(p) + "^" + std::to_string(n);
  auto b = std::make_shared<Building>(building_flag_complex(n, p, options.group_cap));
  ex.building = b;
  ex.group = b->group;
  auto opp = opposition_complex(*b);
  ex.complex = opp.complex;
  ex.action = *opp.action;
  Simplex facet = opp.facet_of(b->chamber_of(standard_flag(n, p)), b->chamber_of(reversed_flag(n, p)));
  ex.fundamental_facet = facet;
  Coloring c;
  for (Vertex v : ex.complex.vertices()) c.color[v] = b->subspaces[opp.pairs[v].first].dim() - 1;
  ex.coloring = c;
  std::vector<std::string> labels;
  for (Vertex v : facet) labels.push_back("L" + std::to_string(b->subspaces[opp.pairs[v].first].dim()));
  ex.family = facet_family(*ex.action, facet, labels);
  return ex;
}

NamedExample build_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  NamedExample ex;
  ex.description = "facet list from " + path;
  ex.complex = parse_facet_list(buf.str());
  return ex;
}

bool is_named(const NamedExample& x, const char* name) { return x.id.name == name; }

nlohmann::json status_json(const Verdict& v) { return std::string(to_string(v.status)); }

Verdict combine_verdicts(const std::vector<Verdict>& parts, nlohmann::json certificate) {
  Status s = Status::Verified;
  std::string reason;
  for (const auto& v : parts) {
    Status next = combine(s, v.status);
    if (next != s) reason = v.reason;
    s = next;
  }
  if (s == Status::Verified) return Verdict::verified(std::move(certificate), reason);
  if (s == Status::Refuted) return Verdict::refuted(std::move(certificate), reason);
  return Verdict::unknown(reason);
}

nlohmann::json f_vector_json(const SimplicialComplex& x) { return x.f_vector(); }

}  // namespace

// ---------------------------------------------------------------------------

ExampleId ExampleId::parse(std::string_view text) {
  ExampleId id;
  if (text.substr(0, 7) == "facets:") {
    id.name = "facets";
    id.path = std::string(text.substr(7));
    if (id.path.empty()) throw UnknownExample("facets: needs a path");
    return id;
  }
  auto open = text.find('(');
  id.name = std::string(text.substr(0, open));
  if (id.name.empty()) throw UnknownExample("empty example name");
  if (open == std::string_view::npos) return id;
  if (text.back() != ')') throw UnknownExample("malformed parameters in " + std::string(text));
  std::string inner(text.substr(open + 1, text.size() - open - 2));
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      id.params.push_back(v);
    } catch (const std::exception&) {
      throw UnknownExample("parameter '" + item + "' is not an integer");
    }
  }
  return id;
}

std::string ExampleId::to_string() const {
  if (name == "facets") return "facets:" + path;
  if (params.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + std::to_string(params[i]);
  return out + ")";
}

std::vector<std::string> example_names() {
  return {"alt5_acyclic", "s3_bipartite", "simplex_boundary(k)", "building_A(n,p)", "opp_A(n,p)", "facets:<path>"};
}

NamedExample build_named(const ExampleId& id, const CatalogOptions& options) {
  NamedExample ex;
  if (id.name == "alt5_acyclic") {
    require_params(id, 0);
    ex = build_alt5();
  } else if (id.name == "s3_bipartite") {
    require_params(id, 0);
    ex = build_s3();
  } else if (id.name == "simplex_boundary") {
    require_params(id, 1);
    ex = build_boundary(id.params[0]);
  } else if (id.name == "building_A") {
    require_params(id, 2);
    ex = build_building(id.params[0], id.params[1], options);
  } else if (id.name == "opp_A") {
    require_params(id, 2);
    ex = build_opposition(id.params[0], id.params[1], options);
  } else if (id.name == "facets") {
    ex = build_from_file(id.path);
  } else {
    throw UnknownExample("no example named '" + id.name + "'");
  }
  ex.id = id;
  return ex;
}

NamedExample build_named(std::string_view id, const CatalogOptions& options) {
  return build_named(ExampleId::parse(id), options);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Expectation e) {
  switch (e) {
    case Expectation::Verified: return "Verified";
    case Expectation::Refuted: return "Refuted";
    case Expectation::NotVerified: return "not Verified";
    case Expectation::None: return "none";
  }
  return "none";
}

std::vector<std::string> check_names() { return kChecks; }

bool check_applies(const NamedExample& x, const std::string& check) {
  if (check == "cm" || check == "homotopy-cm" || check == "skeleton" || check == "shelling") return true;
  if (check == "generation" || check == "subfamilies") return x.family.has_value();
  if (check == "higher-generation") return x.action.has_value() && x.fundamental_facet.has_value();
  if (check == "levi" || check == "weyl") return x.building != nullptr;
  if (check == "walker") return x.coloring.has_value();
  throw PreconditionFailed("unknown check '" + check + "'");
}

Expectation expected_outcome(const NamedExample& x, const std::string& check, const CheckOptions& options) {
  if (x.id.name == "facets") return Expectation::None;
  const bool alt5 = is_named(x, "alt5_acyclic");
  if (check == "homotopy-cm" || check == "higher-generation") {
    return alt5 ? Expectation::Refuted : Expectation::Verified;
  }
  if (check == "generation") {
    if (options.m <= 0) return Expectation::Verified;
    if (alt5 && options.m >= 2) return Expectation::Refuted;
    return options.m <= x.complex.dimension() ? Expectation::Verified : Expectation::Refuted;
  }
  if (check == "shelling") {
    if (alt5) return Expectation::NotVerified;
    if (is_named(x, "opp_A") && x.building->n >= 4) return Expectation::None;
    return Expectation::Verified;
  }
  return Expectation::Verified;
}

bool CheckResult::as_expected() const { return exit_code() == 0; }

int CheckResult::exit_code() const {
  switch (expected) {
    case Expectation::None: return 0;
    case Expectation::NotVerified: return verdict.is_verified() ? 1 : 0;
    case Expectation::Verified:
      if (verdict.is_verified()) return 0;
      return verdict.is_unknown() ? 2 : 1;
    case Expectation::Refuted:
      if (verdict.is_refuted()) return 0;
      return verdict.is_unknown() ? 2 : 1;
  }
  return 0;
}

nlohmann::json CheckResult::to_json(bool timings) const {
  nlohmann::json j = verdict.to_json();
  j["check"] = check;
  j["expected"] = std::string(to_string(expected));
  j["as_expected"] = as_expected();
  j["details"] = details;
  if (timings) j["seconds"] = seconds;
  return j;
}

CheckResult run_check(const NamedExample& x, const std::string& check, const CheckOptions& options) {
  if (!check_applies(x, check)) throw PreconditionFailed("check '" + check + "' does not apply to " + x.id.to_string());
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  r.check = check;
  r.expected = expected_outcome(x, check, options);
  const auto& cx = x.complex;

  if (check == "cm") {
    auto c = cm_over(cx, options.coeff);
    r.verdict = c.verdict;
    r.details = c.to_json(cx);
  } else if (check == "homotopy-cm") {
    auto c = homotopy_cm(cx, options.connectivity);
    r.verdict = c.verdict;
    r.details = c.to_json(cx);
  } else if (check == "generation") {
    r.verdict = generation_verdict(*x.family, options.m, options.connectivity);
    r.details = {{"m", options.m}, {"family", x.family->to_json()}};
  } else if (check == "higher-generation") {
    auto report = higher_generation_report(*x.action, *x.fundamental_facet, options.connectivity);
    auto model = coset_model_isomorphism(*x.action, *x.fundamental_facet);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"k", row.k},
                      {"member_orders", row.member_orders},
                      {"f_vector", row.f_vector},
                      {"generation", row.generation.to_json()},
                      {"sphericity", row.sphericity.to_json()}});
    }
    r.details = {{"rows", rows}, {"coset_model", model.verdict.to_json()}};
    r.verdict = combine_verdicts({report.verdict, model.verdict}, {{"rows", rows.size()}, {"coset_model", "verified"}});
    if (!r.verdict.is_verified()) {
      r.verdict.certificate = report.verdict.is_verified() ? model.verdict.certificate : report.verdict.certificate;
    }
  } else if (check == "subfamilies") {
    auto report = cm_characterisation_via_subfamilies(*x.family, options.coeff, options.connectivity);
    r.verdict = report.homological;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"members", row.members},
                      {"f_vector", row.f_vector},
                      {"required", row.required},
                      {"acyclic", row.acyclic},
                      {"connectivity", status_json(row.connectivity)}});
    }
    r.details = {{"rows", rows}, {"homotopy", report.homotopy.to_json()}};
  } else if (check == "levi") {
    const Building& b = *x.building;
    if (options.m < 0 || options.m > b.n - 2) {
      throw PreconditionFailed("Levi rank " + std::to_string(options.m) + " outside 0.." + std::to_string(b.n - 2));
    }
    auto pl = parabolic_and_levi_subgroups(b, b.n - 2 - options.m);
    std::vector<std::string> names;
    nlohmann::json levis = nlohmann::json::array();
    for (std::size_t i = 0; i < pl.levis.size(); ++i) {
      std::string name = "L";
      for (int s : pl.block_sizes[i]) name += std::to_string(s);
      names.push_back(name);
      levis.push_back({{"name", name},
                       {"blocks", pl.block_sizes[i]},
                       {"order", pl.levis[i].order()},
                       {"index", pl.levis[i].index()},
                       {"parabolic_order", pl.parabolics[i].order()},
                       {"face", b.complex.simplex_name(pl.faces[i])},
                       {"opposite_face", b.complex.simplex_name(pl.opposite_faces[i])}});
    }
    SubgroupFamily family(b.group, pl.levis, names);
    r.verdict = generation_verdict(family, options.m, options.connectivity);
    r.details = {{"m", options.m}, {"levis", levis}, {"block_diagonal", "verified"}};
  } else if (check == "weyl") {
    r.verdict = verify_weyl_transitivity(*x.building, x.building->action);
  } else if (check == "skeleton") {
    auto rows = skeleton_complement_check(cx, options.coeff);
    std::vector<Verdict> parts;
    nlohmann::json table = nlohmann::json::array();
    for (const auto& row : rows) {
      parts.push_back(row.concentration);
      table.push_back({{"s", row.s},
                       {"expected_degree", row.expected_degree},
                       {"model_f_vector", row.model_f_vector},
                       {"homology", row.homology.to_json()},
                       {"status", status_json(row.concentration)}});
    }
    r.verdict = combine_verdicts(parts, {{"rows", table.size()}, {"coefficients", options.coeff.name()}});
    r.details = {{"rows", table}};
  } else if (check == "walker") {
    auto report = walker_colored_check(cx, *x.coloring, options.coeff);
    r.verdict = report.verdict;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"colors", row.colors}, {"f_vector", row.f_vector}, {"required", row.required},
                      {"acyclic", row.acyclic}});
    }
    r.details = {{"rows", rows}};
  } else if (check == "shelling") {
    r.verdict = shelling_search(cx, options.shelling_budget);
    if (r.verdict.is_verified()) {
      auto h = homotopy_cm(cx, options.connectivity);
      if (h.verdict.is_refuted()) throw InvariantViolation("a shellable complex was refuted as homotopy CM");
      r.details = {{"homotopy_cm", status_json(h.verdict)}};
    }
  }
  if (r.verdict.is_verified() && (r.verdict.certificate.is_null() || r.verdict.certificate.empty())) {
    throw InvariantViolation("check '" + check + "' verified without a certificate");
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------

std::vector<KnownValue> known_values(const NamedExample& x) {
  std::vector<KnownValue> out;
  const auto& cx = x.complex;
  const auto f = f_vector_json(cx);
  if (is_named(x, "alt5_acyclic")) {
    std::vector<std::size_t> orders;
    for (const auto& h : x.family->members()) orders.push_back(h.order());
    out.push_back({"f_vector", nlohmann::json::array({21, 80, 60}), f, "reference"});
    out.push_back({"member_orders", nlohmann::json::array({12, 10, 6}), orders, "reference"});
    out.push_back({"Z_acyclic", true, is_k_acyclic(cx, 2), "reference"});
  } else if (is_named(x, "s3_bipartite")) {
    out.push_back({"f_vector", nlohmann::json::array({5, 6}), f, "elementary"});
    out.push_back({"betti_1", 2, reduced_homology(cx).at(1).betti, "elementary"});
  } else if (is_named(x, "simplex_boundary")) {
    const int k = x.id.params[0];
    nlohmann::json expected = nlohmann::json::array();
    for (int i = 0; i < k; ++i) expected.push_back(binomial(k + 1, i + 1));
    out.push_back({"f_vector", expected, f, "elementary"});
  } else if (is_named(x, "building_A") || is_named(x, "opp_A")) {
    const int n = x.building->n;
    const int p = x.building->p;
    std::size_t chambers = 1;
    for (int i = 1; i <= n; ++i) chambers *= gaussian_binomial(i, 1, p);
    const std::size_t opposite_per_chamber = power(static_cast<std::size_t>(p), static_cast<int>(binomial(n, 2)));
    std::size_t vertices = 0;
    auto h = reduced_homology(cx);
    const int d = cx.dimension();
    if (is_named(x, "building_A")) {
      for (int k = 1; k < n; ++k) vertices += gaussian_binomial(n, k, p);
      out.push_back({"vertices", vertices, cx.face_count(0), "derived"});
      out.push_back({"chambers", chambers, cx.facets().size(), "derived"});
      out.push_back({"top_betti", opposite_per_chamber, h.at(d).betti, "reference"});
    } else {
      for (int k = 1; k < n; ++k) vertices += gaussian_binomial(n, k, p) * power(static_cast<std::size_t>(p), k * (n - k));
      out.push_back({"vertices", vertices, cx.face_count(0), "derived"});
      out.push_back({"facets", chambers * opposite_per_chamber, cx.facets().size(), "derived"});
    }
    out.push_back({"homology_concentrated_in_top_degree", true, h.concentrated_in(d), "reference"});
  }
  return out;
}

nlohmann::json example_summary(const NamedExample& x) {
  nlohmann::json j{{"example", x.id.to_string()},
                   {"description", x.description},
                   {"dimension", x.complex.dimension()},
                   {"f_vector", x.complex.f_vector()}};
  if (x.group) j["group_order"] = x.group->order();
  if (x.family) j["family"] = x.family->to_json();
  if (x.fundamental_facet) j["fundamental_facet"] = x.complex.simplex_name(*x.fundamental_facet);
  return j;
}

int Report::exit_code() const {
  bool definite = false;
  bool unknown = false;
  for (const auto& kv : known) definite = definite || !kv.ok();
  for (const auto& c : checks) {
    definite = definite || c.exit_code() == 1;
    unknown = unknown || c.exit_code() == 2;
  }
  return definite ? 1 : (unknown ? 2 : 0);
}

nlohmann::json Report::to_json(bool timings) const {
  nlohmann::json known_json = nlohmann::json::array();
  for (const auto& kv : known) {
    known_json.push_back({{"quantity", kv.quantity},
                          {"expected", kv.expected},
                          {"actual", kv.actual},
                          {"basis", kv.basis},
                          {"ok", kv.ok()}});
  }
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) checks_json.push_back(c.to_json(timings));
  return {{"schema", std::string(kSchema)},
          {"example", example},
          {"coefficients", coeff.name()},
          {"summary", summary},
          {"homology", homology.to_json()},
          {"known_values", known_json},
          {"checks", checks_json},
          {"exit_code", exit_code()}};
}

Report build_report(const NamedExample& x, const CheckOptions& options, std::vector<std::string> checks, unsigned seed) {
  if (checks.empty()) {
    for (const auto& c : kChecks) {
      if (check_applies(x, c)) checks.push_back(c);
    }
  }
  std::mt19937 rng(seed);
  std::shuffle(checks.begin(), checks.end(), rng);
  Report report;
  report.example = x.id.to_string();
  report.coeff = options.coeff;
  report.summary = example_summary(x);
  report.homology = reduced_homology(x.complex, options.coeff);
  report.known = known_values(x);
  for (const auto& c : checks) {
    try {
      report.checks.push_back(run_check(x, c, options));
    } catch (const PreconditionFailed& e) {
      CheckResult r;
      r.check = c;
      r.expected = expected_outcome(x, c, options);
      r.verdict = Verdict::unknown(e.what());
      report.checks.push_back(std::move(r));
    }
  }
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.check < b.check; });
  return report;
}

}  // namespace cosetcx
