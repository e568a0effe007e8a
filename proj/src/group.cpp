#include "mahler/group.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "mahler/error.hpp"

namespace mahler {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::int64_t reduce(std::int64_t v, std::int64_t modulus) {
  if (modulus == 0) return v;
  const std::int64_t r = v % modulus;
  return r < 0 ? r + modulus : r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw ResourceError("exponent overflow in an infinite cyclic factor");
  return out;
}

std::int64_t checked_neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw ResourceError("exponent overflow in an infinite cyclic factor");
  return -a;
}

// Modulus of the rotation subgroup of a dihedral/dicyclic group (0 = infinite).
std::int64_t rotation_modulus(const GroupSpec& g) {
  if (const auto* d = g.as<Dihedral>()) return d->m;
  if (const auto* d = g.as<Dicyclic>()) return 2 * d->m;
  return 0;
}

void check_pair(const GroupSpec& g, const GroupElement& a) {
  const std::int64_t n = rotation_modulus(g);
  if (a.size() != 2 || (a[0] != 0 && a[0] != 1) || (n > 0 && (a[1] < 0 || a[1] >= n)))
    throw GroupMismatch("element is not a normal form of " + g.name());
}

void check_abelian(const AbelianProduct& ab, const GroupSpec& g, const GroupElement& a) {
  if (a.size() != ab.moduli.size()) throw GroupMismatch("element is not a normal form of " + g.name());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto m = ab.moduli[i];
    if (m > 0 && (a[i] < 0 || a[i] >= m)) throw GroupMismatch("element is not a normal form of " + g.name());
  }
}

std::string generator_name(const GroupSpec& g, std::size_t index) {
  if (g.generator_count() <= 2) return index == 0 ? "x" : "y";
  return fmt::format("x{}", index + 1);
}

std::string power_text(const std::string& base, std::int64_t e) {
  return e == 1 ? base : fmt::format("{}^{}", base, e);
}

// Multiplication in D_m / Dic_m / D_inf on (e, k) pairs encoding y^e x^k, using
// x^k y = y x^-k, and y^2 = x^m for dicyclic groups.
GroupElement multiply_pair(std::int64_t n, bool dicyclic_square, std::int64_t half,
                           const GroupElement& a, const GroupElement& b) {
  std::int64_t k = checked_add(b[0] != 0 ? checked_neg(a[1]) : a[1], b[1]);
  std::int64_t e = a[0] + b[0];
  if (e == 2) {
    e = 0;
    if (dicyclic_square) k = checked_add(k, half);
  }
  return GroupElement{e, reduce(k, n)};
}

}  // namespace

std::size_t GroupElement::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ULL ^ data_.size();
  for (const auto v : data_) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

GroupSpec::GroupSpec(Family family) : family_(std::move(family)) {
  std::visit(overloaded{
                 [](const AbelianProduct& a) {
                   if (a.moduli.empty()) throw DomainError("abelian product needs at least one factor");
                   for (auto m : a.moduli)
                     if (m < 0) throw DomainError("negative cyclic modulus");
                 },
                 [](const Dihedral& d) {
                   if (d.m < 0) throw DomainError("dihedral parameter must be non-negative");
                 },
                 [](const Dicyclic& d) {
                   if (d.m < 0) throw DomainError("dicyclic parameter must be non-negative");
                 },
                 [](const Free& f) {
                   if (f.rank < 1) throw DomainError("free group rank must be positive");
                 },
                 [](const FreeProductCyclic& f) {
                   if (f.orders.size() < 2) throw DomainError("free product needs at least two factors");
                   for (auto o : f.orders)
                     if (o < 2) throw DomainError("free product factors must have order >= 2");
                 },
             },
             family_);
}

GroupSpec GroupSpec::abelian(std::vector<std::int64_t> moduli) { return GroupSpec(AbelianProduct{std::move(moduli)}); }
GroupSpec GroupSpec::dihedral(std::int64_t m) { return GroupSpec(Dihedral{m}); }
GroupSpec GroupSpec::dicyclic(std::int64_t m) { return GroupSpec(Dicyclic{m}); }
GroupSpec GroupSpec::free(int rank) { return GroupSpec(Free{rank}); }
GroupSpec GroupSpec::free_product_cyclic(std::vector<std::int64_t> orders) {
  return GroupSpec(FreeProductCyclic{std::move(orders)});
}

std::optional<std::uint64_t> GroupSpec::order() const {
  return std::visit(overloaded{
                        [](const AbelianProduct& a) -> std::optional<std::uint64_t> {
                          std::uint64_t n = 1;
                          for (auto m : a.moduli) {
                            if (m == 0) return std::nullopt;
                            if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(m), &n))
                              throw ResourceError("group order overflows 64 bits");
                          }
                          return n;
                        },
                        [](const Dihedral& d) -> std::optional<std::uint64_t> {
                          if (d.m == 0) return std::nullopt;
                          return 2 * static_cast<std::uint64_t>(d.m);
                        },
                        [](const Dicyclic& d) -> std::optional<std::uint64_t> {
                          if (d.m == 0) return std::nullopt;
                          return 4 * static_cast<std::uint64_t>(d.m);
                        },
                        [](const Free&) -> std::optional<std::uint64_t> { return std::nullopt; },
                        [](const FreeProductCyclic&) -> std::optional<std::uint64_t> { return std::nullopt; },
                    },
                    family_);
}

int GroupSpec::generator_count() const {
  return std::visit(overloaded{
                        [](const AbelianProduct& a) { return static_cast<int>(a.moduli.size()); },
                        [](const Dihedral&) { return 2; },
                        [](const Dicyclic&) { return 2; },
                        [](const Free& f) { return f.rank; },
                        [](const FreeProductCyclic& f) { return static_cast<int>(f.orders.size()); },
                    },
                    family_);
}

std::string GroupSpec::name() const {
  return std::visit(overloaded{
                        [](const AbelianProduct& a) {
                          const bool all_free = std::all_of(a.moduli.begin(), a.moduli.end(),
                                                            [](auto m) { return m == 0; });
                          if (all_free && a.moduli.size() > 1) return fmt::format("Z^{}", a.moduli.size());
                          std::string out;
                          for (std::size_t i = 0; i < a.moduli.size(); ++i) {
                            if (i) out += 'x';
                            out += a.moduli[i] == 0 ? std::string("Z") : fmt::format("Z/{}", a.moduli[i]);
                          }
                          return out;
                        },
                        [](const Dihedral& d) { return d.m == 0 ? std::string("Dinf") : fmt::format("D{}", d.m); },
                        [](const Dicyclic& d) {
                          return d.m == 0 ? std::string("Dicinf") : fmt::format("Dic{}", d.m);
                        },
                        [](const Free& f) { return fmt::format("F{}", f.rank); },
                        [](const FreeProductCyclic& f) {
                          std::string out;
                          for (std::size_t i = 0; i < f.orders.size(); ++i) {
                            if (i) out += '*';
                            out += fmt::format("C{}", f.orders[i]);
                          }
                          return out;
                        },
                    },
                    family_);
}

GroupElement identity(const GroupSpec& g) {
  if (const auto* a = g.as<AbelianProduct>()) return GroupElement(GroupElement::Storage(a->moduli.size(), 0));
  if (g.as<Dihedral>() || g.as<Dicyclic>()) return GroupElement{0, 0};
  return GroupElement{};
}

GroupElement multiply(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  if (const auto* ab = g.as<AbelianProduct>()) {
    check_abelian(*ab, g, a);
    check_abelian(*ab, g, b);
    GroupElement::Storage out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = reduce(checked_add(a[i], b[i]), ab->moduli[i]);
    return GroupElement(std::move(out));
  }
  if (const auto* d = g.as<Dihedral>()) {
    check_pair(g, a);
    check_pair(g, b);
    return multiply_pair(d->m, false, 0, a, b);
  }
  if (const auto* d = g.as<Dicyclic>()) {
    check_pair(g, a);
    check_pair(g, b);
    return multiply_pair(2 * d->m, d->m > 0, d->m, a, b);
  }
  if (g.as<Free>()) {
    const auto x = a.data();
    const auto y = b.data();
    std::size_t i = x.size();
    std::size_t j = 0;
    while (i > 0 && j < y.size() && x[i - 1] == -y[j]) {
      --i;
      ++j;
    }
    GroupElement::Storage out(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
    out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(j), y.end());
    return GroupElement(std::move(out));
  }
  const auto& fp = *g.as<FreeProductCyclic>();
  if (a.size() % 2 != 0 || b.size() % 2 != 0) throw GroupMismatch("element is not a normal form of " + g.name());
  const auto x = a.data();
  const auto y = b.data();
  GroupElement::Storage out(x.begin(), x.end());
  std::size_t j = 0;
  while (!out.empty() && j < y.size() && out[out.size() - 2] == y[j]) {
    const std::int64_t factor = y[j];
    const std::int64_t e = reduce(out.back() + y[j + 1], fp.orders.at(static_cast<std::size_t>(factor)));
    out.pop_back();
    out.pop_back();
    j += 2;
    if (e != 0) {
      out.push_back(factor);
      out.push_back(e);
      break;
    }
  }
  out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(j), y.end());
  return GroupElement(std::move(out));
}

GroupElement invert(const GroupSpec& g, const GroupElement& a) {
  if (const auto* ab = g.as<AbelianProduct>()) {
    check_abelian(*ab, g, a);
    GroupElement::Storage out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = reduce(checked_neg(a[i]), ab->moduli[i]);
    return GroupElement(std::move(out));
  }
  if (g.as<Dihedral>() || g.as<Dicyclic>()) {
    check_pair(g, a);
    const std::int64_t n = rotation_modulus(g);
    if (a[0] == 0) return GroupElement{0, reduce(checked_neg(a[1]), n)};
    // Reflections in D_m and D_inf are involutions; in Dic_m, (y x^k)^-1 = y x^{k+m}.
    const auto* dic = g.as<Dicyclic>();
    if (dic && dic->m > 0) return GroupElement{1, reduce(a[1] + dic->m, n)};
    return a;
  }
  const auto x = a.data();
  if (g.as<Free>()) {
    GroupElement::Storage out;
    out.reserve(x.size());
    for (auto it = x.rbegin(); it != x.rend(); ++it) out.push_back(-*it);
    return GroupElement(std::move(out));
  }
  const auto& fp = *g.as<FreeProductCyclic>();
  if (x.size() % 2 != 0) throw GroupMismatch("element is not a normal form of " + g.name());
  GroupElement::Storage out;
  out.reserve(x.size());
  for (std::size_t s = x.size(); s >= 2; s -= 2) {
    const auto factor = x[s - 2];
    out.push_back(factor);
    out.push_back(fp.orders.at(static_cast<std::size_t>(factor)) - x[s - 1]);
  }
  return GroupElement(std::move(out));
}

GroupElement generator(const GroupSpec& g, int index) { return generator_power(g, index, 1); }

GroupElement generator_power(const GroupSpec& g, int index, std::int64_t exponent) {
  if (index < 0 || index >= g.generator_count())
    throw DomainError(fmt::format("generator index {} is not available in {}", index, g.name()));
  const auto i = static_cast<std::size_t>(index);
  if (const auto* ab = g.as<AbelianProduct>()) {
    GroupElement::Storage out(ab->moduli.size(), 0);
    out[i] = reduce(exponent, ab->moduli[i]);
    return GroupElement(std::move(out));
  }
  if (g.as<Dihedral>() || g.as<Dicyclic>()) {
    const std::int64_t n = rotation_modulus(g);
    if (index == 0) return GroupElement{0, reduce(exponent, n)};
    // y^e by square-and-multiply; y has order 2 or 4.
    GroupElement result = identity(g);
    GroupElement base = GroupElement{1, 0};
    if (exponent < 0) base = invert(g, base);
    std::uint64_t e = exponent < 0 ? 0 - static_cast<std::uint64_t>(exponent) : static_cast<std::uint64_t>(exponent);
    while (e) {
      if (e & 1U) result = multiply(g, result, base);
      base = multiply(g, base, base);
      e >>= 1U;
    }
    return result;
  }
  if (g.as<Free>()) {
    if (exponent > 1'000'000 || exponent < -1'000'000) throw ResourceError("free generator power too large");
    const std::int64_t letter = exponent >= 0 ? index + 1 : -(index + 1);
    const auto len = static_cast<std::size_t>(exponent >= 0 ? exponent : -exponent);
    return GroupElement(GroupElement::Storage(len, letter));
  }
  const auto& fp = *g.as<FreeProductCyclic>();
  const std::int64_t r = reduce(exponent, fp.orders[i]);
  if (r == 0) return GroupElement{};
  return GroupElement{static_cast<std::int64_t>(index), r};
}

std::vector<GroupElement> enumerate(const GroupSpec& g) {
  const auto n = g.order();
  if (!n) throw DomainError("cannot enumerate the infinite group " + g.name());
  if (*n > 100'000'000ULL) throw ResourceError("group too large to enumerate");
  std::vector<GroupElement> out;
  out.reserve(*n);
  if (const auto* ab = g.as<AbelianProduct>()) {
    GroupElement::Storage v(ab->moduli.size(), 0);
    for (std::uint64_t count = 0; count < *n; ++count) {
      out.emplace_back(v);
      for (std::size_t i = v.size(); i-- > 0;) {
        if (++v[i] < ab->moduli[i]) break;
        v[i] = 0;
      }
    }
    return out;
  }
  const std::int64_t rot = rotation_modulus(g);
  for (std::int64_t e = 0; e < 2; ++e)
    for (std::int64_t k = 0; k < rot; ++k) out.push_back(GroupElement{e, k});
  return out;
}

std::optional<std::uint64_t> order(const GroupSpec& g) { return g.order(); }

bool is_normal_form(const GroupSpec& g, const GroupElement& a) {
  if (const auto* ab = g.as<AbelianProduct>()) {
    if (a.size() != ab->moduli.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (ab->moduli[i] > 0 && (a[i] < 0 || a[i] >= ab->moduli[i])) return false;
    return true;
  }
  if (g.as<Dihedral>() || g.as<Dicyclic>()) {
    const std::int64_t n = rotation_modulus(g);
    return a.size() == 2 && (a[0] == 0 || a[0] == 1) && (n == 0 || (a[1] >= 0 && a[1] < n));
  }
  const auto x = a.data();
  if (const auto* f = g.as<Free>()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0 || x[i] > f->rank || x[i] < -f->rank) return false;
      if (i > 0 && x[i] == -x[i - 1]) return false;
    }
    return true;
  }
  const auto& fp = *g.as<FreeProductCyclic>();
  if (x.size() % 2 != 0) return false;
  for (std::size_t s = 0; s < x.size(); s += 2) {
    if (x[s] < 0 || x[s] >= static_cast<std::int64_t>(fp.orders.size())) return false;
    if (x[s + 1] < 1 || x[s + 1] >= fp.orders[static_cast<std::size_t>(x[s])]) return false;
    if (s > 0 && x[s] == x[s - 2]) return false;
  }
  return true;
}

std::string format_element(const GroupSpec& g, const GroupElement& a) {
  std::vector<std::string> parts;
  if (g.as<AbelianProduct>()) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) parts.push_back(power_text(generator_name(g, i), a[i]));
  } else if (g.as<Dihedral>() || g.as<Dicyclic>()) {
    if (a[0] != 0) parts.emplace_back("y");
    if (a[1] != 0) parts.push_back(power_text("x", a[1]));
  } else if (g.as<Free>()) {
    const auto x = a.data();
    for (std::size_t i = 0; i < x.size();) {
      std::size_t j = i;
      while (j < x.size() && x[j] == x[i]) ++j;
      const auto run = static_cast<std::int64_t>(j - i);
      const auto letter = x[i];
      parts.push_back(power_text(generator_name(g, static_cast<std::size_t>(std::abs(letter) - 1)),
                                 letter > 0 ? run : -run));
      i = j;
    }
  } else {
    const auto x = a.data();
    for (std::size_t s = 0; s < x.size(); s += 2)
      parts.push_back(power_text(generator_name(g, static_cast<std::size_t>(x[s])), x[s + 1]));
  }
  if (parts.empty()) return "1";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

}  // namespace mahler
