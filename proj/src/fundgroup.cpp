#include "cosetcx/fundgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cosetcx/errors.hpp"

namespace cosetcx {

namespace {

std::size_t generator_of(Letter l) { return static_cast<std::size_t>(std::abs(l)) - 1; }

Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + static_cast<long>(lo), w.begin() + static_cast<long>(hi));
}

Word rotate_word(const Word& w, std::size_t start) {
  Word out(w.begin() + static_cast<long>(start), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(start));
  return out;
}

// Least rotation of w or w^-1; equal keys mean the relators have the same
// normal closure.
Word canonical_relator(const Word& w) {
  Word best = w;
  for (const Word& v : {w, inverse_word(w)}) {
    for (std::size_t s = 0; s < v.size(); ++s) best = std::min(best, rotate_word(v, s));
  }
  return best;
}

std::string abelian_group_name(std::size_t free_rank, const std::vector<BigInt>& torsion) {
  std::string out;
  for (const auto& t : torsion) out += (out.empty() ? "" : " + ") + ("Z/" + to_string(t));
  if (free_rank > 0) {
    out += (out.empty() ? "" : " + ") + std::string("Z");
    if (free_rank > 1) out += "^" + std::to_string(free_rank);
  }
  return out.empty() ? "0" : out;
}

nlohmann::json degree_json(const DegreeHomology& d) {
  return {{"degree", d.degree}, {"group", abelian_group_name(d.betti, d.torsion)}};
}

}  // namespace

// ---------------------------------------------------------------------------

std::string letter_name(Letter letter) {
  const std::size_t g = generator_of(letter);
  std::string name = g < 26 ? std::string(1, static_cast<char>('a' + g)) : "x" + std::to_string(g);
  if (letter < 0) name[0] = static_cast<char>(name[0] - 'a' + 'A');
  return name;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

void GroupPresentation::validate() const {
  for (const auto& r : relators) {
    for (Letter l : r) {
      if (l == 0 || generator_of(l) >= generators) {
        throw std::invalid_argument("relator letter " + std::to_string(l) + " outside " +
                                    std::to_string(generators) + " generators");
      }
    }
  }
}

std::size_t GroupPresentation::total_length() const {
  std::size_t n = 0;
  for (const auto& r : relators) n += r.size();
  return n;
}

std::string GroupPresentation::to_text() const {
  std::ostringstream out;
  out << "gens: " << generators << "\n";
  for (const auto& r : relators) {
    if (r.empty()) {
      out << "1\n";
      continue;
    }
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << letter_name(r[i]);
    out << "\n";
  }
  return out.str();
}

GroupPresentation GroupPresentation::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  GroupPresentation p;
  bool header = false;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;
    if (!header) {
      std::size_t n = 0;
      if (tok != "gens:" || !(tokens >> n)) throw ParseError("expected `gens: n` header");
      p.generators = n;
      header = true;
      continue;
    }
    Word w;
    do {
      if (tok == "1") continue;
      const bool inverse = std::isupper(static_cast<unsigned char>(tok[0])) != 0;
      const char head = static_cast<char>(std::tolower(static_cast<unsigned char>(tok[0])));
      std::size_t g = 0;
      if (tok.size() == 1 && head >= 'a' && head <= 'z') {
        g = static_cast<std::size_t>(head - 'a');
      } else if (head == 'x' && tok.size() > 1 &&
                 tok.find_first_not_of("0123456789", 1) == std::string::npos) {
        g = std::stoul(tok.substr(1));
      } else {
        throw ParseError("bad generator token `" + tok + "`");
      }
      if (g >= p.generators) throw ParseError("generator `" + tok + "` out of range");
      const Letter l = static_cast<Letter>(g + 1);
      w.push_back(inverse ? -l : l);
    } while (tokens >> tok);
    p.relators.push_back(free_reduce(w));
  }
  if (!header) throw ParseError("empty presentation");
  return p;
}

// ---------------------------------------------------------------------------

EdgePathPresentation edge_path_presentation(const SimplicialComplex& x, Vertex basepoint) {
  if (!x.vertex_position(basepoint)) throw UnknownVertex("basepoint " + std::to_string(basepoint));
  const auto& verts = x.vertices();
  std::map<Vertex, std::vector<Vertex>> adj;
  if (x.dimension() >= 1) {
    for (const auto& e : x.faces(1)) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
  }
  for (auto& [v, ns] : adj) std::sort(ns.begin(), ns.end());

  std::set<Simplex> tree;
  std::set<Vertex> seen{basepoint};
  std::deque<Vertex> queue{basepoint};
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : adj[v]) {
      if (seen.insert(w).second) {
        tree.insert(Simplex{std::min(v, w), std::max(v, w)});
        queue.push_back(w);
      }
    }
  }
  if (seen.size() != verts.size()) {
    throw Disconnected("1-skeleton has vertices unreachable from " + x.vertex_name(basepoint));
  }

  EdgePathPresentation out;
  out.basepoint = basepoint;
  std::map<Simplex, Letter> letter_of;
  if (x.dimension() >= 1) {
    for (const auto& e : x.faces(1)) {
      if (tree.count(e)) continue;
      out.generator_edges.push_back(e);
      letter_of[e] = static_cast<Letter>(out.generator_edges.size());
    }
  }
  out.presentation.generators = out.generator_edges.size();
  auto edge_letter = [&](Vertex a, Vertex b, Word& w) {
    auto it = letter_of.find(Simplex{a, b});
    if (it != letter_of.end()) w.push_back(it->second);
  };
  if (x.dimension() >= 2) {
    for (const auto& t : x.faces(2)) {
      Word w;
      edge_letter(t[0], t[1], w);
      edge_letter(t[1], t[2], w);
      Word back;
      edge_letter(t[0], t[2], back);
      for (Letter l : back) w.push_back(-l);
      out.presentation.relators.push_back(free_reduce(w));
    }
  }
  return out;
}

EdgePathPresentation edge_path_presentation(const SimplicialComplex& x) {
  if (x.empty()) throw Disconnected("empty complex");
  return edge_path_presentation(x, x.vertices().front());
}

// ---------------------------------------------------------------------------

namespace {

class TietzeRun {
 public:
  TietzeRun(const GroupPresentation& p, const TietzeOptions& options)
      : options_(options), active_(p.generators, true), relators_(p.relators) {}

  TietzeResult run() {
    while (true) {
      normalize();
      if (budget_spent()) break;
      if (eliminate_one()) continue;
      if (budget_spent()) break;
      if (shorten_one()) continue;
      break;
    }
    normalize();
    return finish();
  }

 private:
  bool budget_spent() {
    if (steps_ >= options_.max_steps) capped_ = true;
    return capped_;
  }

  void normalize() {
    std::set<Word> seen;
    std::vector<Word> kept;
    std::size_t dropped = 0;
    for (const auto& r : relators_) {
      Word c = cyclic_reduce(r);
      if (c.empty()) {
        ++dropped;
        continue;
      }
      c = canonical_relator(c);
      if (!seen.insert(c).second) {
        ++dropped;
        continue;
      }
      kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    relators_ = std::move(kept);
    if (dropped > 0) {
      steps_ += dropped;
      trace_.push_back({{"op", "drop"}, {"relators", dropped}});
    }
  }

  std::vector<std::size_t> occurrence_totals() const {
    std::vector<std::size_t> total(active_.size(), 0);
    for (const auto& r : relators_) {
      for (Letter l : r) ++total[generator_of(l)];
    }
    return total;
  }

  // Candidates ordered by (relator length, occurrences elsewhere, generator).
  bool eliminate_one() {
    const auto total = occurrence_totals();
    struct Candidate {
      std::size_t length;
      std::size_t elsewhere;
      std::size_t generator;
      std::size_t relator;
      bool operator<(const Candidate& o) const {
        return std::tie(length, elsewhere, generator, relator) <
               std::tie(o.length, o.elsewhere, o.generator, o.relator);
      }
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      std::map<std::size_t, std::size_t> count;
      for (Letter l : relators_[i]) ++count[generator_of(l)];
      for (auto [g, c] : count) {
        if (c == 1) candidates.push_back({relators_[i].size(), total[g] - 1, g, i});
      }
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& cand : candidates) {
      if (try_eliminate(cand.generator, cand.relator)) return true;
    }
    return false;
  }

  bool try_eliminate(std::size_t g, std::size_t relator_index) {
    const Word& r = relators_[relator_index];
    std::size_t pos = 0;
    while (generator_of(r[pos]) != g) ++pos;
    const Word rot = rotate_word(r, pos);
    // rot = x^e w, so x^e = w^-1.
    const Word w(rot.begin() + 1, rot.end());
    const Word replacement = rot[0] > 0 ? inverse_word(w) : w;
    const Word replacement_inv = inverse_word(replacement);

    std::vector<Word> next;
    next.reserve(relators_.size());
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (i == relator_index) continue;
      const Word& s = relators_[i];
      bool touched = false;
      Word out;
      for (Letter l : s) {
        if (generator_of(l) == g) {
          const Word& sub = l > 0 ? replacement : replacement_inv;
          out.insert(out.end(), sub.begin(), sub.end());
          touched = true;
        } else {
          out.push_back(l);
        }
      }
      if (touched) {
        out = cyclic_reduce(out);
        if (out.size() > options_.max_relator_length) {
          length_limited_ = true;
          return false;
        }
        ++steps_;
      }
      next.push_back(std::move(out));
    }
    relators_ = std::move(next);
    active_[g] = false;
    ++steps_;
    trace_.push_back({{"op", "eliminate"}, {"generator", g}, {"relator_length", r.size()}});
    return true;
  }

  // Replace a cyclic subword p of r by q^-1 whenever p q is a cyclic
  // conjugate of a relator s (or its inverse) and |p| > |q|.
  bool shorten_one() {
    for (std::size_t si = 0; si < relators_.size(); ++si) {
      const Word& s = relators_[si];
      for (std::size_t ri = relators_.size(); ri-- > 0;) {
        if (ri == si || relators_[ri].size() < s.size()) continue;
        if (auto shorter = shorten_with(relators_[ri], s)) {
          const std::size_t before = relators_[ri].size();
          relators_[ri] = std::move(*shorter);
          ++steps_;
          trace_.push_back({{"op", "shorten"}, {"from", before}, {"to", relators_[ri].size()}});
          return true;
        }
      }
    }
    return false;
  }

  static std::optional<Word> shorten_with(const Word& r, const Word& s) {
    const std::size_t m = s.size();
    Word doubled = r;
    doubled.insert(doubled.end(), r.begin(), r.end());
    for (const Word& base : {s, inverse_word(s)}) {
      for (std::size_t start = 0; start < m; ++start) {
        const Word u = rotate_word(base, start);
        for (std::size_t k = m; k * 2 > m; --k) {
          if (k > r.size()) continue;
          auto it = std::search(doubled.begin(), doubled.begin() + static_cast<long>(r.size() + k - 1),
                                u.begin(), u.begin() + static_cast<long>(k));
          const auto pos = static_cast<std::size_t>(it - doubled.begin());
          if (pos >= r.size()) continue;
          const Word rot = rotate_word(r, pos);
          Word out = inverse_word(Word(u.begin() + static_cast<long>(k), u.end()));
          out.insert(out.end(), rot.begin() + static_cast<long>(k), rot.end());
          out = cyclic_reduce(out);
          if (out.size() < r.size()) return out;
        }
      }
    }
    return std::nullopt;
  }

  TietzeResult finish() {
    TietzeResult out;
    std::vector<Letter> renumber(active_.size(), 0);
    for (std::size_t g = 0; g < active_.size(); ++g) {
      if (!active_[g]) continue;
      out.surviving.push_back(g);
      renumber[g] = static_cast<Letter>(out.surviving.size());
    }
    out.presentation.generators = out.surviving.size();
    for (const auto& r : relators_) {
      Word w;
      for (Letter l : r) w.push_back(l > 0 ? renumber[generator_of(l)] : -renumber[generator_of(l)]);
      out.presentation.relators.push_back(std::move(w));
    }
    out.capped = capped_ || length_limited_;
    out.steps = steps_;
    out.trace = std::move(trace_);
    return out;
  }

  TietzeOptions options_;
  std::vector<bool> active_;
  std::vector<Word> relators_;
  std::size_t steps_ = 0;
  bool capped_ = false;
  bool length_limited_ = false;
  nlohmann::json trace_ = nlohmann::json::array();
};

}  // namespace

TietzeResult tietze_simplify(const GroupPresentation& p, const TietzeOptions& options) {
  p.validate();
  TietzeResult result = TietzeRun(p, options).run();
  if (abelianization(result.presentation) != abelianization(p)) {
    throw InvariantViolation("Tietze simplification changed the abelianization");
  }
  return result;
}

// ---------------------------------------------------------------------------

std::string Abelianization::to_string() const { return abelian_group_name(free_rank, torsion); }

Abelianization abelianization(const GroupPresentation& p) {
  IntegerMatrix m(p.relators.size(), p.generators);
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    std::map<std::size_t, long long> exponent;
    for (Letter l : p.relators[i]) exponent[generator_of(l)] += l > 0 ? 1 : -1;
    for (auto [g, e] : exponent) {
      if (e != 0) m.set(i, g, e);
    }
  }
  const SmithForm form = smith_normal_form(m);
  return Abelianization{p.generators - form.rank, form.torsion()};
}

void require_matches_first_homology(const Abelianization& ab, const HomologyProfile& h) {
  if (!h.coefficients.is_integers()) {
    throw std::invalid_argument("first-homology comparison needs integer coefficients");
  }
  const auto& h1 = h.at(1);
  if (ab.free_rank != h1.betti || ab.torsion != h1.torsion) {
    throw InvariantViolation("abelianized pi_1 is " + ab.to_string() + " but H_1 is " +
                             abelian_group_name(h1.betti, h1.torsion));
  }
}

// ---------------------------------------------------------------------------

const std::vector<QuotientTarget>& default_quotient_targets() {
  static const std::vector<QuotientTarget> targets = [] {
    auto sym = [](std::size_t n) {
      std::vector<Permutation> gens;
      if (n >= 2) gens.push_back(Permutation::from_cycles("(0 1)", n));
      if (n >= 3) {
        std::string cycle = "(";
        for (std::size_t i = 0; i < n; ++i) cycle += (i ? " " : "") + std::to_string(i);
        gens.push_back(Permutation::from_cycles(cycle + ")", n));
      }
      return generate_group(std::move(gens), n);
    };
    auto alt5 = generate_group(
        {Permutation::from_cycles("(0 1 2 3 4)", 5), Permutation::from_cycles("(0 1 2)", 5)}, 5);
    return std::vector<QuotientTarget>{
        {"S2", sym(2)}, {"S3", sym(3)}, {"S4", sym(4)}, {"Alt5", alt5}, {"S5", sym(5)}};
  }();
  return targets;
}

namespace {

constexpr std::size_t kMaxQuotientTargetOrder = 2048;

class QuotientSearch {
 public:
  QuotientSearch(const GroupPresentation& p, const GroupPtr& target, bool surjective,
                 std::size_t budget)
      : p_(p), target_(target), order_(target->order()), surjective_(surjective), budget_(budget) {
    table_.resize(order_ * order_);
    for (ElementIndex a = 0; a < order_; ++a) {
      inverse_.push_back(target->inverse(a));
      for (ElementIndex b = 0; b < order_; ++b) table_[a * order_ + b] = target->multiply(a, b);
    }
    checks_.resize(p.generators);
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      const auto& r = p.relators[i];
      if (r.empty()) continue;
      std::size_t last = 0;
      for (Letter l : r) last = std::max(last, generator_of(l));
      checks_[last].push_back(i);
    }
    images_.assign(p.generators, 0);
  }

  // False either after a full search or after a budget stop; budget_hit()
  // tells the two apart.
  bool run() { return assign(0); }
  bool budget_hit() const { return budget_hit_; }
  std::size_t nodes() const { return nodes_; }
  const std::vector<ElementIndex>& images() const { return images_; }

  std::size_t image_order() const {
    std::vector<char> seen(order_, 0);
    std::vector<ElementIndex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const ElementIndex a = stack.back();
      stack.pop_back();
      for (ElementIndex g : images_) {
        const ElementIndex b = table_[a * order_ + g];
        if (!seen[b]) {
          seen[b] = 1;
          ++count;
          stack.push_back(b);
        }
      }
    }
    return count;
  }

 private:
  ElementIndex evaluate(const Word& w) const {
    ElementIndex v = 0;
    for (Letter l : w) {
      const ElementIndex img = images_[generator_of(l)];
      v = table_[v * order_ + (l > 0 ? img : inverse_[img])];
    }
    return v;
  }

  bool assign(std::size_t g) {
    if (g == p_.generators) {
      if (surjective_) return image_order() == order_;
      return std::any_of(images_.begin(), images_.end(), [](ElementIndex e) { return e != 0; });
    }
    for (ElementIndex e = 0; e < order_; ++e) {
      if (++nodes_ > budget_) {
        budget_hit_ = true;
        return false;
      }
      images_[g] = e;
      bool ok = true;
      for (std::size_t r : checks_[g]) {
        if (evaluate(p_.relators[r]) != 0) {
          ok = false;
          break;
        }
      }
      if (ok && assign(g + 1)) return true;
      if (budget_hit_) return false;
    }
    return false;
  }

  const GroupPresentation& p_;
  GroupPtr target_;
  std::size_t order_;
  bool surjective_;
  std::size_t budget_;
  std::vector<ElementIndex> table_;
  std::vector<ElementIndex> inverse_;
  std::vector<std::vector<std::size_t>> checks_;
  std::vector<ElementIndex> images_;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
};

// Multiplies every relator out with permutation composition, independently of
// the search's multiplication table.
void verify_homomorphism(const GroupPresentation& p, const std::vector<Permutation>& images) {
  const std::size_t degree = images.empty() ? 0 : images.front().degree();
  for (const auto& r : p.relators) {
    Permutation value = Permutation::identity(degree);
    for (Letter l : r) {
      const Permutation& img = images[generator_of(l)];
      value = value * (l > 0 ? img : img.inverse());
    }
    if (!value.is_identity()) throw InvariantViolation("quotient map does not kill a relator");
  }
}

}  // namespace

Verdict find_finite_quotient(const GroupPresentation& p, const QuotientTarget& target,
                             bool require_surjective, const QuotientOptions& options) {
  p.validate();
  const std::string claim = require_surjective ? "no surjection onto " + target.name
                                               : "no nontrivial homomorphism to " + target.name;
  if (target.group->order() > kMaxQuotientTargetOrder) {
    throw PreconditionFailed("target " + target.name + " has order " +
                             std::to_string(target.group->order()) + " > " +
                             std::to_string(kMaxQuotientTargetOrder));
  }
  if (p.generators > options.max_generators) {
    return Verdict::unknown("presentation too large: " + std::to_string(p.generators) +
                            " generators > " + std::to_string(options.max_generators));
  }
  QuotientSearch search(p, target.group, require_surjective, options.node_budget);
  if (search.run()) {
    std::vector<Permutation> images;
    nlohmann::json cycles = nlohmann::json::array();
    for (ElementIndex e : search.images()) {
      images.push_back(target.group->element(e));
      cycles.push_back(images.back().to_cycles());
    }
    verify_homomorphism(p, images);
    const std::size_t image = search.image_order();
    return Verdict::refuted({{"target", target.name},
                             {"target_order", target.group->order()},
                             {"images", cycles},
                             {"image_order", image},
                             {"surjective", image == target.group->order()},
                             {"nodes", search.nodes()}},
                            "homomorphism found onto a subgroup of order " + std::to_string(image) +
                                " of " + target.name);
  }
  if (search.budget_hit()) {
    return Verdict::unknown("search budget of " + std::to_string(options.node_budget) +
                            " nodes exhausted for " + target.name);
  }
  return Verdict::verified({{"target", target.name}, {"nodes", search.nodes()}, {"exhaustive", true}},
                           claim);
}

// ---------------------------------------------------------------------------

FundamentalGroup fundamental_group(const SimplicialComplex& x, const TietzeOptions& options) {
  FundamentalGroup out;
  out.raw = edge_path_presentation(x);
  out.abelian = abelianization(out.raw.presentation);
  require_matches_first_homology(out.abelian, reduced_homology(x));
  out.simplified = tietze_simplify(out.raw.presentation, options);
  return out;
}

Verdict connectivity_certificate(const SimplicialComplex& x, int k, const ConnectivityOptions& options) {
  if (k < -1) throw PreconditionFailed("connectivity index must be >= -1, got " + std::to_string(k));
  if (x.empty()) return Verdict::refuted({{"vertices", 0}}, "empty complex");
  if (k == -1) return Verdict::verified({{"vertices", x.vertices().size()}}, "nonempty");

  const auto components = connected_components(x);
  if (components.size() > 1) {
    return Verdict::refuted({{"components", components.size()}},
                            std::to_string(components.size()) + " connected components");
  }
  if (k == 0) return Verdict::verified({{"components", 1}}, "connected");

  const HomologyProfile h = reduced_homology(x);
  for (int i = 1; i <= k; ++i) {
    if (!h.at(i).vanishes()) {
      return Verdict::refuted({{"obstruction", degree_json(h.at(i))}},
                              "H~_" + std::to_string(i) + " is nonzero");
    }
  }

  const EdgePathPresentation raw = edge_path_presentation(x);
  require_matches_first_homology(abelianization(raw.presentation), h);
  const TietzeResult simplified = tietze_simplify(raw.presentation, options.tietze);
  nlohmann::json base{{"k", k},
                      {"basepoint", x.vertex_name(raw.basepoint)},
                      {"raw_generators", raw.presentation.generators},
                      {"raw_relators", raw.presentation.relators.size()},
                      {"tietze_steps", simplified.steps}};

  if (simplified.presentation.generators == 0) {
    base["trace"] = simplified.trace;
    base["homology_vanishes_through"] = k;
    return Verdict::verified(base, "pi_1 trivialized and H~_i = 0 for i <= " + std::to_string(k));
  }

  base["simplified"] = simplified.presentation.to_text();
  std::string last_reason;
  for (const auto& target : default_quotient_targets()) {
    Verdict q = find_finite_quotient(simplified.presentation, target, false, options.quotient);
    if (q.is_refuted()) {
      base["quotient"] = q.certificate;
      return Verdict::refuted(base, "pi_1 is nontrivial: " + q.reason);
    }
    if (q.is_unknown()) last_reason = q.reason;
  }
  std::string reason = "pi_1 not trivialized (" + std::to_string(simplified.presentation.generators) +
                       " generators left)";
  if (simplified.capped) reason += ", Tietze budget reached";
  if (!last_reason.empty()) reason += "; " + last_reason;
  return Verdict::unknown(reason);
}

}  // namespace cosetcx
