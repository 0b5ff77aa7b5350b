#include "cosetcx/cmcheck.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "cosetcx/errors.hpp"

namespace cosetcx {

namespace {

std::string witness_name(const SimplicialComplex& x, const Simplex& s) {
  return s.empty() ? "{}" : x.simplex_name(s);
}

// Shared driver: `check(complex, k)` decides k-acyclicity or k-connectivity.
CMCertificate run_cm(const SimplicialComplex& x, std::string variant,
                     const std::function<Verdict(const SimplicialComplex&, int)>& check) {
  CMCertificate cert;
  cert.variant = std::move(variant);
  const int d = x.dimension();
  Status overall = Status::Verified;
  std::string first_unknown;
  std::size_t checked = 0;

  auto record = [&](const Simplex& sigma, int required, const Verdict& v) {
    overall = combine(overall, v.status);
    if (v.is_refuted() && !cert.witness) {
      cert.witness = sigma;
      cert.verdict.certificate = {{"witness", witness_name(x, sigma)},
                                  {"required", required},
                                  {"detail", v.to_json()}};
      cert.verdict.reason = (sigma.empty() ? std::string("complex") : "link of " + witness_name(x, sigma)) +
                            " is not " + std::to_string(required) + "-" +
                            (cert.variant == "homotopy" ? "connected" : "acyclic");
    }
    if (v.is_unknown() && first_unknown.empty()) {
      first_unknown = "link of " + witness_name(x, sigma) + ": " + v.reason;
    }
  };

  if (d - 1 >= -1) {
    Verdict g = check(x, d - 1);
    cert.global = g.status;
    ++checked;
    record({}, d - 1, g);
  }
  for (int s = 0; s <= d; ++s) {
    const int required = d - s - 2;
    if (required < -1) continue;  // facets: vacuous
    for (const auto& sigma : x.faces(s)) {
      Verdict v = check(link(x, sigma), required);
      ++checked;
      cert.links.push_back(LinkCheck{sigma, required, v.status, v.reason});
      record(sigma, required, v);
    }
  }

  cert.verdict.status = overall;
  if (overall == Status::Verified) {
    cert.verdict.certificate = {{"dimension", d}, {"conditions_checked", checked}};
    cert.verdict.reason = "global and all link conditions hold";
  } else if (overall == Status::Unknown) {
    cert.verdict.certificate = nlohmann::json::object();
    cert.verdict.reason = first_unknown;
  }
  if (overall == Status::Verified && !x.empty() && !(x.is_pure() && is_chamber_complex(x))) {
    throw InvariantViolation("CM complex that is not a pure chamber complex");
  }
  return cert;
}

Verdict acyclicity_verdict(const SimplicialComplex& x, int k, Coefficients coeff) {
  const HomologyProfile h = reduced_homology(x, coeff);
  for (const auto& deg : h.degrees) {
    if (deg.degree <= k && !deg.vanishes()) {
      return Verdict::refuted({{"degree", deg.degree}, {"betti", deg.betti}, {"homology", h.to_json()}},
                              "H~_" + std::to_string(deg.degree) + " nonzero");
    }
  }
  return Verdict::verified({{"acyclic_through", k}});
}

}  // namespace

nlohmann::json CMCertificate::to_json(const SimplicialComplex& x) const {
  nlohmann::json out = verdict.to_json();
  out["variant"] = variant;
  out["global"] = std::string(to_string(global));
  std::size_t failing = 0;
  for (const auto& l : links) failing += l.status == Status::Verified ? 0 : 1;
  out["links_checked"] = links.size();
  out["links_not_verified"] = failing;
  if (witness) out["witness"] = witness_name(x, *witness);
  return out;
}

CMCertificate cm_over(const SimplicialComplex& x, Coefficients coeff) {
  return run_cm(x, coeff.name(), [coeff](const SimplicialComplex& y, int k) { return acyclicity_verdict(y, k, coeff); });
}

CMCertificate homotopy_cm(const SimplicialComplex& x, const ConnectivityOptions& options) {
  return run_cm(x, "homotopy",
                [&options](const SimplicialComplex& y, int k) { return connectivity_certificate(y, k, options); });
}

nlohmann::json ImplicationAudit::to_json(const SimplicialComplex& x) const {
  nlohmann::json out;
  out["homotopy"] = homotopy.to_json(x);
  out["Z"] = integers.to_json(x);
  for (const auto& f : fields) out[f.variant] = f.to_json(x);
  return out;
}

ImplicationAudit implication_audit(const SimplicialComplex& x, const std::vector<std::uint32_t>& primes,
                                   const ConnectivityOptions& options) {
  ImplicationAudit audit;
  audit.homotopy = homotopy_cm(x, options);
  audit.integers = cm_over(x, Coefficients::integers());
  for (auto p : primes) audit.fields.push_back(cm_over(x, Coefficients::field(p)));
  if (audit.homotopy.verdict.is_verified() && audit.integers.verdict.is_refuted()) {
    throw InvariantViolation("homotopy CM verified but CM over Z refuted");
  }
  for (const auto& f : audit.fields) {
    if (audit.integers.verdict.is_verified() && f.verdict.is_refuted()) {
      throw InvariantViolation("CM over Z verified but CM over " + f.variant + " refuted");
    }
  }
  return audit;
}

std::vector<SkeletonComplementRow> skeleton_complement_check(const SimplicialComplex& x, Coefficients coeff,
                                                             const SkeletonComplementOptions& options) {
  if (!cm_over(x, coeff).verdict.is_verified()) {
    throw PreconditionFailed("complex is not CM over " + coeff.name());
  }
  const bool with_homotopy = options.homotopy && homotopy_cm(x, options.connectivity).verdict.is_verified();
  const int d = x.dimension();
  std::vector<SkeletonComplementRow> rows;
  for (int s = -1; s < d; ++s) {
    SkeletonComplementRow row;
    row.s = s;
    row.expected_degree = d - s - 1;
    const SimplicialComplex model = skeleton_complement_model(x, s + 1);
    row.model_f_vector = model.f_vector();
    row.homology = reduced_homology(model, coeff);
    row.concentration = concentration_certificate(row.homology, row.expected_degree);
    if (with_homotopy) row.connectivity = connectivity_certificate(model, row.expected_degree - 1, options.connectivity);
    rows.push_back(std::move(row));
  }
  return rows;
}

WalkerReport walker_colored_check(const SimplicialComplex& x, const Coloring& c, Coefficients coeff) {
  if (!x.is_pure()) throw NotPure("colored check needs a pure complex");
  c.validate(x);
  std::vector<int> colors;
  for (Vertex v : x.vertices()) colors.push_back(c(v));
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());

  std::vector<std::uint32_t> subsets;
  for (std::uint32_t mask = 1; mask < (1u << colors.size()); ++mask) subsets.push_back(mask);
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });

  WalkerReport report;
  const ColorSubsetRow* failure = nullptr;
  for (std::uint32_t mask : subsets) {
    ColorSubsetRow row;
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (mask & (1u << i)) row.colors.push_back(colors[i]);
    }
    const SimplicialComplex xj = color_restriction(x, c, row.colors);
    row.f_vector = xj.f_vector();
    row.required = static_cast<int>(row.colors.size()) - 2;
    row.acyclic = is_k_acyclic(xj, row.required, coeff);
    report.rows.push_back(std::move(row));
  }
  for (const auto& row : report.rows) {
    if (!row.acyclic) {
      failure = &row;
      break;
    }
  }
  if (failure) {
    report.verdict = Verdict::refuted({{"colors", failure->colors}, {"required", failure->required}},
                                      "color-restricted subcomplex not " + std::to_string(failure->required) +
                                          "-acyclic");
  } else {
    report.verdict = Verdict::verified({{"subsets_checked", report.rows.size()}});
  }
  const Status direct = cm_over(x, coeff).verdict.status;
  if (direct != report.verdict.status) {
    throw InvariantViolation("colored criterion disagrees with the direct CM check over " + coeff.name());
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

class ShellingSearch {
 public:
  ShellingSearch(const SimplicialComplex& x, std::size_t budget) : x_(x), budget_(budget) {
    facets_ = x.facets();
    n_ = facets_.size();
    const std::size_t width = facets_.empty() ? 0 : facets_.front().size();
    ridge_ = static_cast<int>(width) - 1;
    full_ = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    overlap_.assign(n_ * n_, 0);
    neighbours_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == j) continue;
        std::uint64_t m = 0;
        for (std::size_t p = 0; p < width; ++p) {
          if (std::binary_search(facets_[i].begin(), facets_[i].end(), facets_[j][p])) m |= std::uint64_t{1} << p;
        }
        overlap_[j * n_ + i] = m;
        if (m) neighbours_[i].push_back(j);
      }
    }
    ridges_.assign(n_, 0);
    pending_.resize(n_);
    used_.assign(n_, false);
  }

  Verdict run() {
    if (n_ <= 1 || ridge_ <= 0) return success();
    if (greedy()) return success();
    reset();
    if (dfs()) return success();
    if (budget_hit_) {
      return Verdict::unknown("shelling search budget of " + std::to_string(budget_) + " partial orderings exhausted");
    }
    return Verdict::refuted({{"exhaustive", true}, {"partial_orderings", nodes_}}, "no facet ordering is a shelling");
  }

 private:
  struct Change {
    std::size_t facet;
    std::uint64_t old_ridges;
    bool pushed;
  };

  bool admissible(std::size_t j) const {
    if (order_.empty()) return true;
    const std::uint64_t r = ridges_[j];
    if (r == 0) return false;
    for (std::uint64_t m : pending_[j]) {
      if ((~m & r) == 0) return false;
    }
    return true;
  }

  void place(std::size_t i) {
    used_[i] = true;
    order_.push_back(i);
    for (std::size_t j : neighbours_[i]) {
      if (used_[j]) continue;
      const std::uint64_t m = overlap_[j * n_ + i];
      Change c{j, ridges_[j], false};
      if (std::popcount(m) == ridge_) {
        ridges_[j] |= full_ & ~m;
      } else {
        pending_[j].push_back(m);
        c.pushed = true;
      }
      log_.push_back(c);
    }
    marks_.push_back(log_.size());
  }

  void unplace() {
    marks_.pop_back();
    const std::size_t keep = marks_.empty() ? 0 : marks_.back();
    while (log_.size() > keep) {
      const Change c = log_.back();
      log_.pop_back();
      ridges_[c.facet] = c.old_ridges;
      if (c.pushed) pending_[c.facet].pop_back();
    }
    used_[order_.back()] = false;
    order_.pop_back();
  }

  void reset() {
    while (!order_.empty()) unplace();
  }

  bool greedy() {
    while (order_.size() < n_) {
      std::size_t next = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!used_[j] && admissible(j)) {
          next = j;
          break;
        }
      }
      if (next == n_ || ++nodes_ > budget_) return false;
      place(next);
    }
    return true;
  }

  bool dfs() {
    if (order_.size() == n_) return true;
    for (std::size_t j = 0; j < n_; ++j) {
      if (used_[j] || !admissible(j)) continue;
      if (++nodes_ > budget_) {
        budget_hit_ = true;
        return false;
      }
      place(j);
      if (dfs()) return true;
      unplace();
      if (budget_hit_) return false;
    }
    return false;
  }

  Verdict success() const {
    nlohmann::json order = nlohmann::json::array();
    if (order_.size() == n_) {
      for (std::size_t i : order_) order.push_back(x_.simplex_name(facets_[i]));
    } else {
      for (const auto& f : facets_) order.push_back(x_.simplex_name(f));
    }
    return Verdict::verified({{"order", order}, {"partial_orderings", nodes_}}, "shelling found");
  }

  const SimplicialComplex& x_;
  std::size_t budget_;
  std::vector<Simplex> facets_;
  std::size_t n_ = 0;
  int ridge_ = 0;
  std::uint64_t full_ = 0;
  std::vector<std::uint64_t> overlap_;  // overlap_[j*n+i]: positions of F_j lying in F_i
  std::vector<std::vector<std::size_t>> neighbours_;
  std::vector<std::uint64_t> ridges_;
  std::vector<std::vector<std::uint64_t>> pending_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
  std::vector<Change> log_;
  std::vector<std::size_t> marks_;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
};

}  // namespace

Verdict shelling_search(const SimplicialComplex& x, std::size_t budget) {
  if (!x.is_pure()) throw NotPure("shelling needs a pure complex");
  if (x.dimension() >= 64) throw PreconditionFailed("facets with more than 64 vertices");
  return ShellingSearch(x, budget).run();
}

}  // namespace cosetcx
