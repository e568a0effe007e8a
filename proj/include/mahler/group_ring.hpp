#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mahler/gaussian.hpp"
#include "mahler/group.hpp"

namespace mahler {

/// Element of the group ring C[G]: a finite-support map from normal forms to
/// coefficients. Zero coefficients are never stored and terms are kept sorted
/// by GroupElement ordering, so two equal elements are equal as data.
template <class C>
class BasicRingElement {
 public:
  using Coefficient = C;

  struct Term {
    GroupElement element;
    C coefficient;
  };

  explicit BasicRingElement(GroupSpec group) : group_(std::move(group)) {}
  /// Sums duplicate elements, drops zeros and sorts. Throws GroupMismatch if an
  /// element is not a normal form of `group`.
  BasicRingElement(GroupSpec group, std::vector<Term> terms);

  static BasicRingElement constant(GroupSpec group, C value);
  static BasicRingElement monomial(GroupSpec group, GroupElement element, C value);

  const GroupSpec& group() const { return group_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of `element`, zero when absent.
  C coefficient(const GroupElement& element) const;

  friend bool operator==(const BasicRingElement& a, const BasicRingElement& b) {
    if (!(a.group_ == b.group_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].element == b.terms_[i].element) || !(a.terms_[i].coefficient == b.terms_[i].coefficient))
        return false;
    return true;
  }

 private:
  GroupSpec group_;
  std::vector<Term> terms_;
};

using RingElement = BasicRingElement<std::complex<double>>;
using ExactRingElement = BasicRingElement<GaussianRational>;

/// One generator raised to a power inside a word.
struct Letter {
  int generator = 0;
  std::int64_t exponent = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct WordTerm {
  GaussianRational coefficient;
  std::vector<Letter> word;
  friend bool operator==(const WordTerm&, const WordTerm&) = default;
};

/// Group-agnostic polynomial in the named generators: the same expression can
/// be realized in several groups (x + x^-1 + y means different ring elements
/// in Z^2, D_3 and F_2).
struct WordPoly {
  std::vector<WordTerm> terms;
  friend bool operator==(const WordPoly&, const WordPoly&) = default;
};

/// Evaluates each word in `group` and collects terms.
template <class C>
BasicRingElement<C> realize(const GroupSpec& group, const WordPoly& poly);

template <class C>
BasicRingElement<C> add(const BasicRingElement<C>& a, const BasicRingElement<C>& b);
template <class C>
BasicRingElement<C> subtract(const BasicRingElement<C>& a, const BasicRingElement<C>& b);
template <class C>
BasicRingElement<C> scale(const BasicRingElement<C>& a, const C& factor);
template <class C>
BasicRingElement<C> mul(const BasicRingElement<C>& a, const BasicRingElement<C>& b);

/// Q* = sum conj(c_g) g^-1.
template <class C>
BasicRingElement<C> star(const BasicRingElement<C>& a);

/// star(a) == a, compared exactly.
template <class C>
bool is_reciprocal(const BasicRingElement<C>& a);

/// [a]_0.
template <class C>
C constant_coefficient(const BasicRingElement<C>& a);

/// Sum of |c_g|.
template <class C>
double l1_norm(const BasicRingElement<C>& a);

/// Sum of |c_g|^2.
template <class C>
double l2_norm_squared(const BasicRingElement<C>& a);

struct PowerOptions {
  /// Abort with ResourceError once an intermediate power has more terms.
  std::size_t support_cap = 5'000'000;
};

template <class C>
BasicRingElement<C> power(const BasicRingElement<C>& p, unsigned n, const PowerOptions& options = {});

/// Lazily produces a_0, a_1, a_2, ... with a_n = [P^n]_0. Only powers up to
/// ceil(n/2) are formed: a_{i+j} = sum_g [P^i](g) [P^j](g^-1).
template <class C>
class PowerCoefficientStream {
 public:
  explicit PowerCoefficientStream(BasicRingElement<C> p, PowerOptions options = {});

  /// The next coefficient; throws ResourceError when the support cap is hit.
  C next();
  /// Index of the coefficient the next call returns.
  std::size_t index() const { return n_; }
  /// Support size of the largest power formed so far.
  std::size_t support() const { return current_.size(); }

 private:
  using Map = std::unordered_map<GroupElement, C, GroupElementHash>;

  BasicRingElement<C> p_;
  PowerOptions options_;
  std::size_t n_ = 0;
  Map current_;  // P^h with h = floor(n/2)
  Map next_;
};

/// Prefix a_0..a_N of a_n = [P^n]_0.
template <class C>
struct SeriesCoeffs {
  std::vector<C> values;
  std::size_t truncation = 0;
  /// k with |a_n| <= k^n.
  double l1_bound = 0.0;
};

/// a_n = [P^n]_0 for n = 0..N. Only powers up to ceil(N/2) are formed:
/// a_{i+j} = sum_g [P^i](g) [P^j](g^-1).
template <class C>
SeriesCoeffs<C> power_constant_coeffs(const BasicRingElement<C>& p, std::size_t n_max,
                                      const PowerOptions& options = {});

RingElement to_floating(const ExactRingElement& a);
/// Exact image of a floating element (doubles are dyadic rationals).
ExactRingElement to_exact(const RingElement& a);

/// "3 + x + x^-1 + 2*y", in term order.
template <class C>
std::string format_ring_element(const BasicRingElement<C>& a);

}  // namespace mahler
