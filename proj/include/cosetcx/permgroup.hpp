#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cosetcx {

using Point = std::uint32_t;
using ElementIndex = std::uint32_t;

/// A permutation of {0, ..., degree-1} in one-line notation.
///
/// Composition follows function composition: (a * b)(x) == a(b(x)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  /// Parses cycle notation such as "(0 1 2)(3 4)"; "()" is the identity.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;
  std::size_t order() const;
  std::string to_cycles() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

/// Largest point mentioned in a cycle-notation string, plus one.
std::size_t cycle_text_degree(std::string_view text);

/// Reads one permutation per non-empty line (cycle notation, `#` comments).
/// A degree of 0 means "infer from the largest point seen".
std::vector<Permutation> parse_generators(std::string_view text, std::size_t degree = 0);

/// A finite permutation group held by full enumeration.
///
/// Elements are sorted lexicographically by one-line notation, so the
/// identity always has index 0 and every derived order is reproducible.
class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultCap = 1'000'000;

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  const Permutation& element(ElementIndex i) const { return elements_[i]; }

  std::optional<ElementIndex> index_of(const Permutation& g) const;
  /// Like index_of but throws NotASubgroup for a foreign permutation.
  ElementIndex require_index(const Permutation& g) const;
  ElementIndex multiply(ElementIndex a, ElementIndex b) const;
  ElementIndex inverse(ElementIndex a) const;
  ElementIndex identity() const { return 0; }

  /// Optional human-readable name for each point (e.g. a vector of F_p^n).
  const std::vector<std::string>& point_labels() const { return point_labels_; }

  friend std::shared_ptr<const FiniteGroup> generate_group(std::vector<Permutation> gens,
                                                           std::size_t degree, std::size_t cap,
                                                           std::vector<std::string> labels);

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::vector<std::string> point_labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Closure of `gens` under composition. Throws CapExceeded when the closure
/// outgrows `cap` and DegreeMismatch when the generators disagree on degree.
GroupPtr generate_group(std::vector<Permutation> gens, std::size_t degree,
                        std::size_t cap = FiniteGroup::kDefaultCap,
                        std::vector<std::string> labels = {});

/// A subgroup stored as the sorted list of its element indices in the parent.
class Subgroup {
 public:
  /// Validates closure; throws NotASubgroup otherwise.
  static Subgroup from_elements(GroupPtr parent, std::vector<ElementIndex> elements);
  /// Skips the closure check; `elements` must already be a sorted subgroup.
  static Subgroup from_closed_set(GroupPtr parent, std::vector<ElementIndex> elements) {
    return Subgroup(std::move(parent), std::move(elements));
  }
  static Subgroup generated_by(GroupPtr parent, const std::vector<ElementIndex>& gens);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<ElementIndex>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t index() const { return parent_->order() / elements_.size(); }
  bool contains(ElementIndex g) const;
  bool is_subgroup_of(const Subgroup& other) const;

  bool operator==(const Subgroup& other) const {
    return parent_ == other.parent_ && elements_ == other.elements_;
  }

 private:
  Subgroup(GroupPtr parent, std::vector<ElementIndex> elements)
      : parent_(std::move(parent)), elements_(std::move(elements)) {}

  GroupPtr parent_;
  std::vector<ElementIndex> elements_;
};

/// A left coset rep*H. `representative` is the minimum element of the coset
/// in canonical order; `elements` lists the coset in ascending order.
struct Coset {
  ElementIndex representative = 0;
  std::vector<ElementIndex> elements;
};

/// All left cosets of H in its parent together with the membership map.
struct CosetTable {
  std::vector<Coset> cosets;
  std::vector<std::uint32_t> coset_of;  // element index -> coset index
};

Subgroup stabilizer(const GroupPtr& group, Point point);
Subgroup normalizer(const GroupPtr& group, const Subgroup& h);
Subgroup intersect(const std::vector<Subgroup>& subgroups);
CosetTable coset_table(const Subgroup& h);
std::vector<Coset> left_cosets(const GroupPtr& group, const Subgroup& h);

/// Smallest subgroup containing the given parent elements.
Subgroup subgroup_closure(const GroupPtr& parent, const std::vector<ElementIndex>& elements);
/// Commutator subgroup [H, H].
Subgroup derived_subgroup(const Subgroup& h);

// ---------------------------------------------------------------------------
// Linear algebra over a prime field, just enough to realize GL_n(F_p) as a
// permutation group on nonzero vectors.

/// Nonzero vectors of F_p^n are encoded as sum v_i p^i; point = code - 1.
struct PrimeField {
  int n = 0;
  int p = 2;

  std::size_t vector_count() const;  // p^n
  std::size_t point_count() const { return vector_count() - 1; }
  std::vector<int> decode(std::size_t code) const;
  std::size_t encode(const std::vector<int>& v) const;
  std::string label(std::size_t code) const;
};

/// Row-major n x n matrix over F_p.
using FpMatrix = std::vector<int>;

bool is_prime(int p);
/// Permutation of the nonzero vectors induced by v -> M v.
Permutation matrix_to_permutation(const PrimeField& field, const FpMatrix& m);
/// Determinant modulo p.
int fp_determinant(const PrimeField& field, FpMatrix m);
/// |GL_n(F_p)| = prod_{i<n} (p^n - p^i), as an exact count.
std::size_t general_linear_order(int n, int p);

/// GL_n(F_p) acting faithfully on the p^n - 1 nonzero vectors. The generators
/// are the transvection e_2 -> e_2 + e_1 and the cyclic basis map
/// e_i -> e_{i+1}; for odd p a diagonal generator diag(w, 1, ..., 1) with w
/// a primitive root is appended so that the determinant map is onto.
GroupPtr matrix_group_as_permutations(int n, int p, std::size_t cap = FiniteGroup::kDefaultCap);

}  // namespace cosetcx
