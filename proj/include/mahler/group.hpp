#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace mahler {

// Group families. Every group in the catalogue is generated by at most a few
// named generators; generator index 0 is spelled `x` (or `x1`), index 1 is `y`
// (or `x2`), index k is `x{k+1}`.

/// Z/m_1 x ... x Z/m_l; a modulus of 0 is an infinite cyclic factor.
struct AbelianProduct {
  std::vector<std::int64_t> moduli;
  friend bool operator==(const AbelianProduct&, const AbelianProduct&) = default;
};

/// D_m = <x, y | x^m, y^2, yxyx>; m = 0 is D_inf.
struct Dihedral {
  std::int64_t m = 0;
  friend bool operator==(const Dihedral&, const Dihedral&) = default;
};

/// Dic_m = <x, y | x^{2m}, y^2 x^m, y^-1 x y x>. m = 0 is <x, y | y^2, (yx)^2>,
/// which has the same multiplication as D_inf.
struct Dicyclic {
  std::int64_t m = 0;
  friend bool operator==(const Dicyclic&, const Dicyclic&) = default;
};

/// Free group on `rank` generators.
struct Free {
  int rank = 1;
  friend bool operator==(const Free&, const Free&) = default;
};

/// Free product Z/o_1 * ... * Z/o_r of finite cyclic groups, e.g. C2*C3 = PSL2(Z).
struct FreeProductCyclic {
  std::vector<std::int64_t> orders;
  friend bool operator==(const FreeProductCyclic&, const FreeProductCyclic&) = default;
};

class GroupSpec {
 public:
  using Family = std::variant<AbelianProduct, Dihedral, Dicyclic, Free, FreeProductCyclic>;

  /// Validates parameters; throws DomainError on nonsense (negative moduli,
  /// rank 0, cyclic orders below 2, ...).
  explicit GroupSpec(Family family);

  static GroupSpec abelian(std::vector<std::int64_t> moduli);
  static GroupSpec dihedral(std::int64_t m);
  static GroupSpec dicyclic(std::int64_t m);
  static GroupSpec free(int rank);
  static GroupSpec free_product_cyclic(std::vector<std::int64_t> orders);

  const Family& family() const { return family_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&family_);
  }

  /// Number of elements, or nullopt for an infinite group.
  std::optional<std::uint64_t> order() const;
  bool is_finite() const { return order().has_value(); }

  int generator_count() const;

  /// Canonical spelling, e.g. "Z^2", "Z/3xZ/2", "ZxZ/4", "D5", "Dinf", "Dic3",
  /// "Dicinf", "F2", "C2*C3".
  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  Family family_;
};

/// Normal form of a group element. The meaning of the integer payload depends
/// on the family of the owning GroupSpec:
///
///   AbelianProduct      exponent vector, entry i reduced to [0, m_i) when m_i > 0
///   Dihedral/Dicyclic   (e, k) for y^e x^k, e in {0,1}, k reduced mod m (resp. 2m)
///   Free                reduced word; letter +(i+1) is x_i, -(i+1) is x_i^-1
///   FreeProductCyclic   flattened syllables (factor, exponent), exponent in
///                       [1, order), adjacent syllables from distinct factors
///
/// Equality, hashing and ordering are on the payload. The ordering is
/// lexicographic; on finite groups it coincides with enumerate() order.
class GroupElement {
 public:
  using Storage = boost::container::small_vector<std::int64_t, 6>;

  GroupElement() = default;
  explicit GroupElement(Storage data) : data_(std::move(data)) {}
  GroupElement(std::initializer_list<std::int64_t> data) : data_(data) {}

  std::span<const std::int64_t> data() const { return {data_.data(), data_.size()}; }
  std::size_t size() const { return data_.size(); }
  std::int64_t operator[](std::size_t i) const { return data_[i]; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.data_ == b.data_; }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.data_ < b.data_; }

  std::size_t hash() const noexcept;

 private:
  Storage data_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept { return g.hash(); }
};

GroupElement identity(const GroupSpec& g);

/// Normal form of a*b. Throws GroupMismatch when a or b is not shaped like a
/// normal form of g, ResourceError on exponent overflow in an infinite factor.
GroupElement multiply(const GroupSpec& g, const GroupElement& a, const GroupElement& b);

GroupElement invert(const GroupSpec& g, const GroupElement& a);

/// The generator with the given index; throws DomainError if out of range.
GroupElement generator(const GroupSpec& g, int index);

/// generator(g, index)^exponent, any sign.
GroupElement generator_power(const GroupSpec& g, int index, std::int64_t exponent);

/// All elements in canonical order: lexicographic exponent vectors for abelian
/// groups; rotations x^0..x^{n-1} then reflections y, yx, yx^2, ... for the
/// dihedral and dicyclic families. Throws DomainError for infinite groups.
std::vector<GroupElement> enumerate(const GroupSpec& g);

/// Order as a number, nullopt meaning infinite.
std::optional<std::uint64_t> order(const GroupSpec& g);

/// True if `a` is a well-formed normal form for g.
bool is_normal_form(const GroupSpec& g, const GroupElement& a);

/// Readable monomial such as "1", "x^2", "y*x^-1", "x1*x2^-1".
std::string format_element(const GroupSpec& g, const GroupElement& a);

}  // namespace mahler

template <>
struct std::hash<mahler::GroupElement> {
  std::size_t operator()(const mahler::GroupElement& g) const noexcept { return g.hash(); }
};
