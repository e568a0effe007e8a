#include "mahler/group_ring.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "mahler/error.hpp"

namespace mahler {

namespace {

template <class C>
using TermMap = std::unordered_map<GroupElement, C, GroupElementHash>;

template <class C>
std::vector<typename BasicRingElement<C>::Term> collect(TermMap<C>&& acc) {
  std::vector<typename BasicRingElement<C>::Term> out;
  out.reserve(acc.size());
  for (auto& [g, c] : acc)
    if (!coeff_is_zero(c)) out.push_back({g, std::move(c)});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.element < b.element; });
  return out;
}

void require_same_group(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw GroupMismatch("ring elements belong to different groups: " + a.name() + " vs " + b.name());
}

template <class C>
C one() {
  return C(1);
}

std::string format_coefficient(const std::complex<double>& c) {
  if (c.imag() == 0.0) return fmt::format("{:.15g}", c.real());
  return fmt::format("({:.15g}{:+.15g}i)", c.real(), c.imag());
}

std::string format_coefficient(const GaussianRational& c) {
  if (c.is_real()) return c.str();
  return "(" + c.str() + ")";
}

template <class C>
void multiply_into(const GroupSpec& g, const TermMap<C>& lhs, std::span<const typename BasicRingElement<C>::Term> rhs,
                   TermMap<C>& out) {
  out.clear();
  out.reserve(lhs.size() * std::max<std::size_t>(1, rhs.size() / 2));
  for (const auto& [a, ca] : lhs)
    for (const auto& t : rhs) {
      auto [it, inserted] = out.try_emplace(multiply(g, a, t.element), ca);
      if (inserted)
        it->second *= t.coefficient;
      else
        it->second += ca * t.coefficient;
    }
  std::erase_if(out, [](const auto& kv) { return coeff_is_zero(kv.second); });
}

// sum_g A(g) B(g^-1)
template <class C>
C pair_constant(const GroupSpec& g, const TermMap<C>& a, const TermMap<C>& b) {
  C total{};
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [x, cx] : small) {
    const auto it = large.find(invert(g, x));
    if (it != large.end()) total += cx * it->second;
  }
  return total;
}

}  // namespace

template <class C>
BasicRingElement<C>::BasicRingElement(GroupSpec group, std::vector<Term> terms) : group_(std::move(group)) {
  TermMap<C> acc;
  acc.reserve(terms.size());
  for (auto& t : terms) {
    if (!is_normal_form(group_, t.element))
      throw GroupMismatch("term is not a normal form of " + group_.name());
    auto [it, inserted] = acc.try_emplace(std::move(t.element), t.coefficient);
    if (!inserted) it->second += t.coefficient;
  }
  terms_ = collect(std::move(acc));
}

template <class C>
BasicRingElement<C> BasicRingElement<C>::constant(GroupSpec group, C value) {
  auto e = identity(group);
  return monomial(std::move(group), std::move(e), std::move(value));
}

template <class C>
BasicRingElement<C> BasicRingElement<C>::monomial(GroupSpec group, GroupElement element, C value) {
  std::vector<Term> terms;
  terms.push_back({std::move(element), std::move(value)});
  return BasicRingElement(std::move(group), std::move(terms));
}

template <class C>
C BasicRingElement<C>::coefficient(const GroupElement& element) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), element,
                                   [](const Term& t, const GroupElement& e) { return t.element < e; });
  if (it != terms_.end() && it->element == element) return it->coefficient;
  return C{};
}

template <class C>
BasicRingElement<C> realize(const GroupSpec& group, const WordPoly& poly) {
  std::vector<typename BasicRingElement<C>::Term> terms;
  terms.reserve(poly.terms.size());
  for (const auto& wt : poly.terms) {
    GroupElement g = identity(group);
    for (const auto& letter : wt.word) g = multiply(group, g, generator_power(group, letter.generator, letter.exponent));
    if constexpr (is_exact_coeff_v<C>)
      terms.push_back({std::move(g), wt.coefficient});
    else
      terms.push_back({std::move(g), wt.coefficient.to_complex()});
  }
  return BasicRingElement<C>(group, std::move(terms));
}

template <class C>
BasicRingElement<C> add(const BasicRingElement<C>& a, const BasicRingElement<C>& b) {
  require_same_group(a.group(), b.group());
  std::vector<typename BasicRingElement<C>::Term> terms(a.terms().begin(), a.terms().end());
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return BasicRingElement<C>(a.group(), std::move(terms));
}

template <class C>
BasicRingElement<C> subtract(const BasicRingElement<C>& a, const BasicRingElement<C>& b) {
  return add(a, scale(b, C(-1)));
}

template <class C>
BasicRingElement<C> scale(const BasicRingElement<C>& a, const C& factor) {
  std::vector<typename BasicRingElement<C>::Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) terms.push_back({t.element, t.coefficient * factor});
  return BasicRingElement<C>(a.group(), std::move(terms));
}

template <class C>
BasicRingElement<C> mul(const BasicRingElement<C>& a, const BasicRingElement<C>& b) {
  require_same_group(a.group(), b.group());
  TermMap<C> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      auto [it, inserted] = acc.try_emplace(multiply(a.group(), ta.element, tb.element), ta.coefficient);
      if (inserted)
        it->second *= tb.coefficient;
      else
        it->second += ta.coefficient * tb.coefficient;
    }
  return BasicRingElement<C>(a.group(), collect(std::move(acc)));
}

template <class C>
BasicRingElement<C> star(const BasicRingElement<C>& a) {
  std::vector<typename BasicRingElement<C>::Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) terms.push_back({invert(a.group(), t.element), coeff_conj(t.coefficient)});
  return BasicRingElement<C>(a.group(), std::move(terms));
}

template <class C>
bool is_reciprocal(const BasicRingElement<C>& a) {
  return star(a) == a;
}

template <class C>
C constant_coefficient(const BasicRingElement<C>& a) {
  return a.coefficient(identity(a.group()));
}

template <class C>
double l1_norm(const BasicRingElement<C>& a) {
  double total = 0.0;
  for (const auto& t : a.terms()) total += coeff_abs(t.coefficient);
  return total;
}

template <class C>
double l2_norm_squared(const BasicRingElement<C>& a) {
  double total = 0.0;
  for (const auto& t : a.terms()) total += std::norm(to_complex(t.coefficient));
  return total;
}

template <class C>
BasicRingElement<C> power(const BasicRingElement<C>& p, unsigned n, const PowerOptions& options) {
  TermMap<C> cur;
  cur.emplace(identity(p.group()), one<C>());
  TermMap<C> next;
  for (unsigned i = 0; i < n; ++i) {
    multiply_into<C>(p.group(), cur, p.terms(), next);
    std::swap(cur, next);
    if (cur.size() > options.support_cap)
      throw ResourceError(fmt::format("support of P^{} exceeds the cap of {} terms", i + 1, options.support_cap));
  }
  return BasicRingElement<C>(p.group(), collect(std::move(cur)));
}

template <class C>
PowerCoefficientStream<C>::PowerCoefficientStream(BasicRingElement<C> p, PowerOptions options)
    : p_(std::move(p)), options_(options) {
  current_.emplace(identity(p_.group()), one<C>());
}

template <class C>
C PowerCoefficientStream<C>::next() {
  const GroupSpec& g = p_.group();
  const std::size_t n = n_;
  if (n % 2 == 0) {
    ++n_;
    return pair_constant(g, current_, current_);
  }
  multiply_into<C>(g, current_, p_.terms(), next_);
  if (next_.size() > options_.support_cap)
    throw ResourceError(fmt::format("support of P^{} exceeds the cap of {} terms", n / 2 + 1, options_.support_cap));
  C value = pair_constant(g, next_, current_);
  std::swap(current_, next_);
  ++n_;
  return value;
}

template <class C>
SeriesCoeffs<C> power_constant_coeffs(const BasicRingElement<C>& p, std::size_t n_max, const PowerOptions& options) {
  SeriesCoeffs<C> out;
  out.truncation = n_max;
  out.l1_bound = l1_norm(p);
  out.values.reserve(n_max + 1);
  PowerCoefficientStream<C> stream(p, options);
  for (std::size_t n = 0; n <= n_max; ++n) out.values.push_back(stream.next());
  return out;
}

RingElement to_floating(const ExactRingElement& a) {
  std::vector<RingElement::Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) terms.push_back({t.element, t.coefficient.to_complex()});
  return RingElement(a.group(), std::move(terms));
}

ExactRingElement to_exact(const RingElement& a) {
  std::vector<ExactRingElement::Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) terms.push_back({t.element, GaussianRational::from_complex(t.coefficient)});
  return ExactRingElement(a.group(), std::move(terms));
}

template <class C>
std::string format_ring_element(const BasicRingElement<C>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += " + ";
    const std::string word = format_element(a.group(), t.element);
    const bool unit = t.coefficient == one<C>();
    if (word == "1")
      out += format_coefficient(t.coefficient);
    else if (unit)
      out += word;
    else
      out += format_coefficient(t.coefficient) + "*" + word;
  }
  return out;
}

#define MAHLER_INSTANTIATE(C)                                                                               \
  template class BasicRingElement<C>;                                                                       \
  template class PowerCoefficientStream<C>;                                                                       \
  template BasicRingElement<C> realize<C>(const GroupSpec&, const WordPoly&);                               \
  template BasicRingElement<C> add(const BasicRingElement<C>&, const BasicRingElement<C>&);                 \
  template BasicRingElement<C> subtract(const BasicRingElement<C>&, const BasicRingElement<C>&);            \
  template BasicRingElement<C> scale(const BasicRingElement<C>&, const C&);                                 \
  template BasicRingElement<C> mul(const BasicRingElement<C>&, const BasicRingElement<C>&);                 \
  template BasicRingElement<C> star(const BasicRingElement<C>&);                                            \
  template bool is_reciprocal(const BasicRingElement<C>&);                                                  \
  template C constant_coefficient(const BasicRingElement<C>&);                                              \
  template double l1_norm(const BasicRingElement<C>&);                                                      \
  template double l2_norm_squared(const BasicRingElement<C>&);                                              \
  template BasicRingElement<C> power(const BasicRingElement<C>&, unsigned, const PowerOptions&);            \
  template SeriesCoeffs<C> power_constant_coeffs(const BasicRingElement<C>&, std::size_t, const PowerOptions&); \
  template std::string format_ring_element(const BasicRingElement<C>&);

MAHLER_INSTANTIATE(std::complex<double>)
MAHLER_INSTANTIATE(GaussianRational)

#undef MAHLER_INSTANTIATE

}  // namespace mahler
