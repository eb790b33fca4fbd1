#pragma once

// Arithmetic in GF(p^h) with table-driven multiplication, plus the cubic
// tower GF(q)[x]/(x^3 - b x - c) used by the Singer construction.

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plane_chroma/error.hpp"

namespace plane_chroma::gf {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime factors, ascending (trial division).
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t h = 0;
};

inline std::optional<PrimePower> as_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto factors = prime_factors(q);
  if (factors.size() != 1) return std::nullopt;
  PrimePower pp{static_cast<std::uint32_t>(factors[0]), 0};
  while (q > 1) {
    q /= pp.p;
    ++pp.h;
  }
  return pp;
}

/// An element of GF(p^h), packed as the base-p integer whose digit i is the
/// coefficient of x^i. The prime subfield is exactly the codes 0 .. p-1.
struct FieldElement {
  std::uint32_t code = 0;

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t h = 1;
  // Ascending coefficients of the monic modulus; size h + 1, back() == 1.
  std::vector<std::uint32_t> modulus;
};

namespace detail {

using poly = std::vector<std::uint32_t>;  // ascending coefficients mod p

inline void trim(poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  // p is prime and small; Fermat.
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

/// Remainder of a modulo m over GF(p); m nonzero.
inline poly poly_rem(poly a, poly m, std::uint32_t p) {
  trim(a);
  trim(m);
  const std::uint32_t lead_inv = inv_mod_prime(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint32_t factor = static_cast<std::uint32_t>(std::uint64_t{a.back()} * lead_inv % p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::uint64_t sub = std::uint64_t{factor} * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline poly poly_from_code(std::uint64_t code, std::uint32_t p, std::uint32_t len) {
  poly out(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    out[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return out;
}

/// Brute-force irreducibility: no monic factor of degree 1 .. deg/2.
inline bool is_irreducible(const poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      poly g = poly_from_code(code, p, static_cast<std::uint32_t>(d));
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// First irreducible monic polynomial of degree h over GF(p), enumerating the
/// lower coefficients (c_0, ..., c_{h-1}) as the base-p integer
/// c_0 + c_1 p + ... in increasing order.
inline std::vector<std::uint32_t> first_irreducible(std::uint32_t p, std::uint32_t h) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < h; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    auto f = detail::poly_from_code(code, p, h);
    f.push_back(1);
    if (detail::is_irreducible(f, p)) return f;
  }
  fail(errc::construction_failed, "no irreducible polynomial found");  // unreachable
}

class Field {
 public:
  static constexpr std::uint32_t max_order = 1u << 16;

  explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
    if (!is_prime(spec_.p)) fail(errc::invalid_characteristic, std::to_string(spec_.p) + " is not prime");
    if (spec_.h < 1) fail(errc::domain_error, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < spec_.h; ++i) {
      q *= spec_.p;
      if (q > max_order) fail(errc::unsupported, "field order exceeds " + std::to_string(max_order));
    }
    q_ = static_cast<std::uint32_t>(q);
    if (spec_.modulus.size() != spec_.h + 1 || spec_.modulus.back() != 1)
      fail(errc::domain_error, "modulus must be monic of degree h");
    for (auto c : spec_.modulus)
      if (c >= spec_.p) fail(errc::domain_error, "modulus coefficient out of range");
    if (!detail::is_irreducible(spec_.modulus, spec_.p)) fail(errc::domain_error, "modulus is reducible");
    build_tables();
  }

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t p() const noexcept { return spec_.p; }
  std::uint32_t h() const noexcept { return spec_.h; }
  std::uint32_t order() const noexcept { return q_; }

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }

  FieldElement element(std::uint32_t code) const {
    if (code >= q_) fail(errc::domain_error, "element code " + std::to_string(code) + " out of range");
    return {code};
  }

  /// n * 1 in the prime subfield.
  FieldElement from_integer(std::int64_t n) const {
    const auto p = static_cast<std::int64_t>(spec_.p);
    return {static_cast<std::uint32_t>(((n % p) + p) % p)};
  }

  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != spec_.h) fail(errc::domain_error, "coefficient vector must have length h");
    std::uint32_t code = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      if (coeffs[i] >= spec_.p) fail(errc::domain_error, "coefficient out of range");
      code = code * spec_.p + coeffs[i];
    }
    return {code};
  }

  std::vector<std::uint32_t> coeffs(FieldElement a) const {
    return detail::poly_from_code(a.code, spec_.p, spec_.h);
  }

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    if (!add_table_.empty()) return {add_table_[std::size_t{a.code} * q_ + b.code]};
    return digitwise(a, b, 1);
  }

  FieldElement neg(FieldElement a) const noexcept { return {neg_table_[a.code]}; }

  FieldElement sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    if (a.code == 0 || b.code == 0) return zero();
    return {exp_[log_[a.code] + log_[b.code]]};
  }

  FieldElement inv(FieldElement a) const {
    if (a.code == 0) fail(errc::division_by_zero, "inverse of zero");
    return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
  }

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  FieldElement pow(FieldElement a, std::int64_t n) const {
    if (a.code == 0) {
      if (n < 0) fail(errc::division_by_zero, "negative power of zero");
      return n == 0 ? one() : zero();
    }
    const auto m = static_cast<std::int64_t>(q_ - 1);
    const std::int64_t e = ((n % m) + m) % m;
    return {exp_[static_cast<std::size_t>((log_[a.code] * e) % m)]};
  }

  /// Smallest n >= 1 with a^n = 1.
  std::uint64_t element_order(FieldElement a) const {
    if (a.code == 0) fail(errc::division_by_zero, "order of zero");
    const std::uint64_t m = q_ - 1;
    return m / std::gcd(std::uint64_t{log_[a.code]}, m);
  }

  FieldElement primitive_element() const noexcept { return generator_; }

  /// Discrete log base primitive_element(); a must be nonzero.
  std::uint32_t log(FieldElement a) const {
    if (a.code == 0) fail(errc::division_by_zero, "log of zero");
    return log_[a.code];
  }

  FieldElement exp(std::uint64_t k) const noexcept { return {exp_[k % (q_ - 1)]}; }

  /// Multiplication by repeated polynomial reduction, independent of the log
  /// tables. Used to build them and available as a cross-check.
  FieldElement mul_slow(FieldElement a, FieldElement b) const {
    const auto pa = coeffs(a), pb = coeffs(b);
    detail::poly prod(2 * spec_.h, 0);
    for (std::size_t i = 0; i < pa.size(); ++i)
      for (std::size_t j = 0; j < pb.size(); ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{pa[i]} * pb[j]) % spec_.p);
    auto r = detail::poly_rem(std::move(prod), spec_.modulus, spec_.p);
    r.resize(spec_.h, 0);
    return from_coeffs(r);
  }

 private:
  FieldElement digitwise(FieldElement a, FieldElement b, std::uint32_t scale_b) const noexcept {
    std::uint32_t code = 0, place = 1, x = a.code, y = b.code;
    for (std::uint32_t i = 0; i < spec_.h; ++i) {
      const std::uint32_t d = (x % spec_.p + scale_b * (y % spec_.p)) % spec_.p;
      code += d * place;
      place *= spec_.p;
      x /= spec_.p;
      y /= spec_.p;
    }
    return {code};
  }

  FieldElement pow_slow(FieldElement a, std::uint64_t e) const {
    FieldElement r = one();
    while (e) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  }

  void build_tables() {
    neg_table_.resize(q_);
    for (std::uint32_t c = 0; c < q_; ++c) neg_table_[c] = digitwise(zero(), {c}, spec_.p - 1).code;
    if (q_ <= 1024) {
      add_table_.resize(std::size_t{q_} * q_);
      for (std::uint32_t a = 0; a < q_; ++a)
        for (std::uint32_t b = 0; b < q_; ++b) add_table_[std::size_t{a} * q_ + b] = digitwise({a}, {b}, 1).code;
    }
    const std::uint64_t m = q_ - 1;
    const auto factors = prime_factors(m);
    for (std::uint32_t c = 1; c < q_; ++c) {
      bool primitive = true;
      for (auto r : factors)
        if (pow_slow({c}, m / r) == one()) {
          primitive = false;
          break;
        }
      if (primitive) {
        generator_ = {c};
        break;
      }
    }
    exp_.assign(2 * m + 1, 0);
    log_.assign(q_, 0);
    FieldElement cur = one();
    for (std::uint64_t k = 0; k < m; ++k) {
      exp_[k] = cur.code;
      log_[cur.code] = static_cast<std::uint32_t>(k);
      cur = mul_slow(cur, generator_);
    }
    for (std::uint64_t k = m; k < exp_.size(); ++k) exp_[k] = exp_[k - m];
  }

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  FieldElement generator_{1};
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> neg_table_;
  std::vector<std::uint16_t> add_table_;
};

/// GF(p^h) with the lexicographically first irreducible modulus.
inline Field field_make(std::uint32_t p, std::uint32_t h) {
  if (!is_prime(p)) fail(errc::invalid_characteristic, std::to_string(p) + " is not prime");
  if (h < 1) fail(errc::domain_error, "extension degree must be >= 1");
  return Field(FieldSpec{p, h, first_irreducible(p, h)});
}

inline Field field_of_order(std::uint64_t q) {
  const auto pp = as_prime_power(q);
  if (!pp) fail(errc::invalid_characteristic, std::to_string(q) + " is not a prime power");
  return field_make(pp->p, pp->h);
}

/// Represents x^3 - b x - c over GF(q).
struct CubicModulus {
  FieldElement b;
  FieldElement c;

  friend bool operator==(const CubicModulus&, const CubicModulus&) = default;
};

/// GF(q)[x]/(x^3 - b x - c). Elements are (c0, c1, c2) meaning c2 x^2 + c1 x + c0.
/// Holds a reference to the base field; must not outlive it.
class CubicTower {
 public:
  using element = std::array<FieldElement, 3>;

  CubicTower(const Field& base, CubicModulus m) : f_(&base), m_(m) {}

  const Field& base() const noexcept { return *f_; }
  const CubicModulus& modulus() const noexcept { return m_; }

  element one() const noexcept { return {f_->one(), f_->zero(), f_->zero()}; }
  element x() const noexcept { return {f_->zero(), f_->one(), f_->zero()}; }

  /// Multiply by x: x (c2 x^2 + c1 x + c0) = c1 x^2 + (c0 + b c2) x + c c2.
  element times_x(const element& a) const noexcept {
    return {f_->mul(m_.c, a[2]), f_->add(a[0], f_->mul(m_.b, a[2])), a[1]};
  }

  element mul(const element& a, const element& b) const noexcept {
    const Field& f = *f_;
    std::array<FieldElement, 5> prod{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
    // x^4 = b x^2 + c x, x^3 = b x + c
    prod[2] = f.add(prod[2], f.mul(m_.b, prod[4]));
    prod[1] = f.add(prod[1], f.mul(m_.c, prod[4]));
    prod[1] = f.add(prod[1], f.mul(m_.b, prod[3]));
    prod[0] = f.add(prod[0], f.mul(m_.c, prod[3]));
    return {prod[0], prod[1], prod[2]};
  }

  element pow(element a, std::uint64_t e) const noexcept {
    element r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

 private:
  const Field* f_;
  CubicModulus m_;
};

/// True iff the root x of x^3 - b x - c has multiplicative order q^3 - 1.
/// A reducible cubic can never pass, since its quotient ring has too few units.
inline bool is_primitive_cubic(const Field& f, CubicModulus m) {
  if (m.c == f.zero()) return false;
  const CubicTower tower(f, m);
  const std::uint64_t q = f.order();
  const std::uint64_t n = q * q * q - 1;
  if (tower.pow(tower.x(), n) != tower.one()) return false;
  for (auto r : prime_factors(n))
    if (tower.pow(tower.x(), n / r) == tower.one()) return false;
  return true;
}

/// First (b, c) in code order (b major) with x^3 - b x - c primitive over GF(q).
inline CubicModulus find_primitive_cubic(const Field& f) {
  for (std::uint32_t b = 0; b < f.order(); ++b)
    for (std::uint32_t c = 1; c < f.order(); ++c) {
      const CubicModulus m{{b}, {c}};
      if (is_primitive_cubic(f, m)) return m;
    }
  fail(errc::no_such_polynomial, "no primitive polynomial x^3 - bx - c over GF(" + std::to_string(f.order()) + ")");
}

}  // namespace plane_chroma::gf
