#include "cosetcx/permgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "cosetcx/errors.hpp"

namespace cosetcx {

namespace {

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

std::vector<std::vector<Point>> parse_cycles(std::string_view text) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (i >= text.size()) throw ParseError("unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw ParseError("unexpected character in cycle notation: " + std::string(text));
      }
      Point value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<Point>(text[i] - '0');
        ++i;
      }
      cycle.push_back(value);
    }
    cycles.push_back(std::move(cycle));
    skip_space();
  }
  return cycles;
}

}  // namespace

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw std::invalid_argument("Permutation: images are not a bijection");
    }
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cycle : parse_cycles(text)) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      Point from = cycle[k];
      Point to = cycle[(k + 1) % cycle.size()];
      if (from >= degree || to >= degree) {
        throw DegreeMismatch("point " + std::to_string(std::max(from, to)) +
                             " outside degree " + std::to_string(degree));
      }
      if (used[from]) throw ParseError("point repeated across cycles: " + std::string(text));
      used[from] = true;
      images[from] = to;
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw DegreeMismatch("composing permutations of unequal degree");
  Permutation out;
  out.images_.resize(degree());
  for (std::size_t x = 0; x < degree(); ++x) out.images_[x] = images_[rhs.images_[x]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(degree());
  for (std::size_t x = 0; x < degree(); ++x) out.images_[images_[x]] = static_cast<Point>(x);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < degree(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

std::size_t Permutation::order() const {
  std::size_t result = 1;
  std::vector<bool> seen(degree(), false);
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (std::size_t y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::string Permutation::to_cycles() const {
  std::ostringstream out;
  std::vector<bool> seen(degree(), false);
  bool any = false;
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    any = true;
    out << '(';
    bool first = true;
    for (std::size_t y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      if (!first) out << ' ';
      out << y;
      first = false;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

std::size_t cycle_text_degree(std::string_view text) {
  std::size_t degree = 0;
  for (const auto& cycle : parse_cycles(text)) {
    for (Point x : cycle) degree = std::max<std::size_t>(degree, x + 1);
  }
  return degree;
}

std::vector<Permutation> parse_generators(std::string_view text, std::size_t degree) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (degree == 0) {
    for (const auto& l : lines) degree = std::max(degree, cycle_text_degree(l));
  }
  std::vector<Permutation> gens;
  for (const auto& l : lines) gens.push_back(Permutation::from_cycles(l, degree));
  return gens;
}

// ---------------------------------------------------------------------------

GroupPtr generate_group(std::vector<Permutation> gens, std::size_t degree, std::size_t cap,
                        std::vector<std::string> labels) {
  for (const auto& g : gens) {
    if (g.degree() != degree) {
      throw DegreeMismatch("generator of degree " + std::to_string(g.degree()) +
                           " in a group of degree " + std::to_string(degree));
    }
  }
  if (!labels.empty() && labels.size() != degree) {
    throw DegreeMismatch("point label count differs from degree");
  }
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> found;
  std::deque<std::size_t> queue;
  auto id = Permutation::identity(degree);
  seen.insert(id);
  found.push_back(id);
  queue.push_back(0);
  while (!queue.empty()) {
    std::size_t at = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      Permutation next = s * found[at];
      if (seen.insert(next).second) {
        if (found.size() >= cap) {
          throw CapExceeded("group closure exceeds cap of " + std::to_string(cap) + " elements");
        }
        found.push_back(std::move(next));
        queue.push_back(found.size() - 1);
      }
    }
  }
  std::sort(found.begin(), found.end());
  auto group = std::make_shared<FiniteGroup>();
  group->degree_ = degree;
  group->generators_ = std::move(gens);
  group->elements_ = std::move(found);
  group->point_labels_ = std::move(labels);
  return group;
}

std::optional<ElementIndex> FiniteGroup::index_of(const Permutation& g) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
  if (it == elements_.end() || *it != g) return std::nullopt;
  return static_cast<ElementIndex>(it - elements_.begin());
}

ElementIndex FiniteGroup::require_index(const Permutation& g) const {
  auto idx = index_of(g);
  if (!idx) throw NotASubgroup("permutation " + g.to_cycles() + " is not in the group");
  return *idx;
}

ElementIndex FiniteGroup::multiply(ElementIndex a, ElementIndex b) const {
  return *index_of(elements_[a] * elements_[b]);
}

ElementIndex FiniteGroup::inverse(ElementIndex a) const {
  return *index_of(elements_[a].inverse());
}

// ---------------------------------------------------------------------------

Subgroup Subgroup::from_elements(GroupPtr parent, std::vector<ElementIndex> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements.front() != parent->identity()) {
    throw NotASubgroup("element list misses the identity");
  }
  for (ElementIndex e : elements) {
    if (e >= parent->order()) throw NotASubgroup("element index out of range");
  }
  Subgroup h(std::move(parent), std::move(elements));
  for (ElementIndex a : h.elements_) {
    if (!h.contains(h.parent_->inverse(a))) throw NotASubgroup("not closed under inverses");
    for (ElementIndex b : h.elements_) {
      if (!h.contains(h.parent_->multiply(a, b))) {
        throw NotASubgroup("not closed under composition");
      }
    }
  }
  return h;
}

Subgroup Subgroup::generated_by(GroupPtr parent, const std::vector<ElementIndex>& gens) {
  return subgroup_closure(parent, gens);
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<ElementIndex> all(parent->order());
  std::iota(all.begin(), all.end(), ElementIndex{0});
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent) {
  return Subgroup(std::move(parent), {0});
}

bool Subgroup::contains(ElementIndex g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  return parent_ == other.parent_ &&
         std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

Subgroup subgroup_closure(const GroupPtr& parent, const std::vector<ElementIndex>& elements) {
  std::vector<bool> in(parent->order(), false);
  std::vector<ElementIndex> members{parent->identity()};
  in[parent->identity()] = true;
  std::vector<ElementIndex> gens;
  auto push = [&](ElementIndex x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  // Elements already in the closure are skipped, so the generator list stays
  // short. After each extension `members` is closed under left
  // multiplication by every generator.
  for (ElementIndex g : elements) {
    if (g >= parent->order()) throw NotASubgroup("element index out of range");
    if (in[g]) continue;
    gens.push_back(g);
    const std::size_t old = members.size();
    for (std::size_t i = 0; i < old; ++i) push(parent->multiply(g, members[i]));
    for (std::size_t at = old; at < members.size(); ++at) {
      for (ElementIndex s : gens) push(parent->multiply(s, members[at]));
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup::from_closed_set(parent, std::move(members));
}

Subgroup derived_subgroup(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<ElementIndex> commutators;
  for (ElementIndex a : h.elements()) {
    for (ElementIndex b : h.elements()) {
      ElementIndex ab = g->multiply(a, b);
      ElementIndex ba = g->multiply(b, a);
      commutators.push_back(g->multiply(ab, g->inverse(ba)));
    }
  }
  std::sort(commutators.begin(), commutators.end());
  commutators.erase(std::unique(commutators.begin(), commutators.end()), commutators.end());
  return subgroup_closure(g, commutators);
}

Subgroup stabilizer(const GroupPtr& group, Point point) {
  if (point >= group->degree()) throw DegreeMismatch("stabilized point outside the degree");
  std::vector<ElementIndex> fixing;
  for (ElementIndex i = 0; i < group->order(); ++i) {
    if (group->element(i)(point) == point) fixing.push_back(i);
  }
  return Subgroup::from_closed_set(group, std::move(fixing));
}

Subgroup normalizer(const GroupPtr& group, const Subgroup& h) {
  if (h.parent() != group) throw NotASubgroup("subgroup belongs to a different group");
  std::vector<ElementIndex> result;
  for (ElementIndex g = 0; g < group->order(); ++g) {
    const Permutation& pg = group->element(g);
    Permutation pg_inv = pg.inverse();
    bool normalizes = true;
    for (ElementIndex x : h.elements()) {
      auto conj = group->index_of(pg * group->element(x) * pg_inv);
      if (!conj || !h.contains(*conj)) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) result.push_back(g);
  }
  return Subgroup::from_closed_set(group, std::move(result));
}

Subgroup intersect(const std::vector<Subgroup>& subgroups) {
  if (subgroups.empty()) throw std::invalid_argument("intersect: empty subgroup list");
  std::vector<ElementIndex> common = subgroups.front().elements();
  for (std::size_t i = 1; i < subgroups.size(); ++i) {
    if (subgroups[i].parent() != subgroups.front().parent()) {
      throw ParentMismatch("intersected subgroups live in different groups");
    }
    std::vector<ElementIndex> next;
    std::set_intersection(common.begin(), common.end(), subgroups[i].elements().begin(),
                          subgroups[i].elements().end(), std::back_inserter(next));
    common = std::move(next);
  }
  return Subgroup::from_closed_set(subgroups.front().parent(), std::move(common));
}

CosetTable coset_table(const Subgroup& h) {
  const auto& g = h.parent();
  constexpr auto kUnassigned = static_cast<std::uint32_t>(-1);
  CosetTable table;
  table.coset_of.assign(g->order(), kUnassigned);
  for (ElementIndex x = 0; x < g->order(); ++x) {
    if (table.coset_of[x] != kUnassigned) continue;
    Coset coset;
    coset.representative = x;
    const auto index = static_cast<std::uint32_t>(table.cosets.size());
    for (ElementIndex y : h.elements()) {
      ElementIndex xy = g->multiply(x, y);
      table.coset_of[xy] = index;
      coset.elements.push_back(xy);
    }
    std::sort(coset.elements.begin(), coset.elements.end());
    table.cosets.push_back(std::move(coset));
  }
  return table;
}

std::vector<Coset> left_cosets(const GroupPtr& group, const Subgroup& h) {
  if (h.parent() != group) throw NotASubgroup("subgroup belongs to a different group");
  return coset_table(h).cosets;
}

// ---------------------------------------------------------------------------

std::size_t PrimeField::vector_count() const {
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(p);
  return count;
}

std::vector<int> PrimeField::decode(std::size_t code) const {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::size_t>(p));
    code /= static_cast<std::size_t>(p);
  }
  return v;
}

std::size_t PrimeField::encode(const std::vector<int>& v) const {
  std::size_t code = 0;
  for (int i = n - 1; i >= 0; --i) {
    code = code * static_cast<std::size_t>(p) + static_cast<std::size_t>(v[static_cast<std::size_t>(i)]);
  }
  return code;
}

std::string PrimeField::label(std::size_t code) const {
  auto v = decode(code);
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + ")";
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Permutation matrix_to_permutation(const PrimeField& field, const FpMatrix& m) {
  const auto n = static_cast<std::size_t>(field.n);
  std::vector<Point> images(field.point_count());
  std::vector<int> image(n);
  for (std::size_t code = 1; code < field.vector_count(); ++code) {
    auto v = field.decode(code);
    for (std::size_t r = 0; r < n; ++r) {
      int acc = 0;
      for (std::size_t c = 0; c < n; ++c) acc += m[r * n + c] * v[c];
      image[r] = acc % field.p;
    }
    std::size_t target = field.encode(image);
    if (target == 0) throw std::invalid_argument("matrix is singular");
    images[code - 1] = static_cast<Point>(target - 1);
  }
  return Permutation(std::move(images));
}

int fp_determinant(const PrimeField& field, FpMatrix m) {
  const auto n = static_cast<std::size_t>(field.n);
  const int p = field.p;
  auto inv = [p](int a) {
    for (int x = 1; x < p; ++x) {
      if ((a * x) % p == 1) return x;
    }
    return 0;
  };
  int det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot * n + col] % p == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m[pivot * n + c], m[col * n + c]);
      det = (p - det) % p;
    }
    int a = m[col * n + col] % p;
    det = (det * a) % p;
    int a_inv = inv(a);
    for (std::size_t r = col + 1; r < n; ++r) {
      int factor = (m[r * n + col] * a_inv) % p;
      for (std::size_t c = col; c < n; ++c) {
        m[r * n + c] = ((m[r * n + c] - factor * m[col * n + c]) % p + p) % p;
      }
    }
  }
  return det;
}

std::size_t general_linear_order(int n, int p) {
  std::size_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= static_cast<std::size_t>(p);
  std::size_t order = 1;
  std::size_t qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= static_cast<std::size_t>(p);
  }
  return order;
}

GroupPtr matrix_group_as_permutations(int n, int p, std::size_t cap) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  PrimeField field{n, p};
  if (field.point_count() > cap) {
    throw CapExceeded("p^n - 1 = " + std::to_string(field.point_count()) + " exceeds the cap");
  }
  const auto un = static_cast<std::size_t>(n);
  std::vector<Permutation> gens;
  if (n >= 2) {
    FpMatrix transvection(un * un, 0);
    for (std::size_t i = 0; i < un; ++i) transvection[i * un + i] = 1;
    transvection[0 * un + 1] = 1;
    gens.push_back(matrix_to_permutation(field, transvection));
    FpMatrix cycle(un * un, 0);
    for (std::size_t j = 0; j < un; ++j) cycle[((j + 1) % un) * un + j] = 1;
    gens.push_back(matrix_to_permutation(field, cycle));
  }
  if (p > 2) {
    int root = 2;
    for (; root < p; ++root) {
      int x = 1;
      int ord = 0;
      do {
        x = (x * root) % p;
        ++ord;
      } while (x != 1);
      if (ord == p - 1) break;
    }
    FpMatrix diag(un * un, 0);
    for (std::size_t i = 0; i < un; ++i) diag[i * un + i] = 1;
    diag[0] = root;
    gens.push_back(matrix_to_permutation(field, diag));
  }
  std::size_t expected = general_linear_order(n, p);
  if (expected > cap) {
    throw CapExceeded("|GL_" + std::to_string(n) + "(F_" + std::to_string(p) +
                      ")| = " + std::to_string(expected) + " exceeds the cap");
  }
  std::vector<std::string> labels;
  for (std::size_t code = 1; code < field.vector_count(); ++code) labels.push_back(field.label(code));
  auto group = generate_group(std::move(gens), field.point_count(), cap, std::move(labels));
  if (group->order() != expected) {
    throw InvariantViolation("generators produced a group of order " +
                             std::to_string(group->order()) + ", expected " +
                             std::to_string(expected));
  }
  return group;
}

}  // namespace cosetcx
