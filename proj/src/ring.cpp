#include "zpr/ring.hpp"

#include <limits>
#include <string>

#include "zpr/errors.hpp"

namespace zpr {

bool is_prime(Scalar n) noexcept {
  if (n < 2) return false;
  for (Scalar d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

RingParams::RingParams(Scalar p, int r) : p_(p), r_(r) {
  if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (r < 1) throw InvalidArgument("r must be at least 1");
  constexpr Scalar kLimit = std::numeric_limits<std::int32_t>::max();
  powers_.reserve(static_cast<std::size_t>(r) + 1);
  powers_.push_back(1);
  for (int i = 0; i < r; ++i) {
    if (powers_.back() > kLimit / p) {
      throw InvalidArgument("p^r exceeds the supported range (2^31 - 1)");
    }
    powers_.push_back(powers_.back() * p);
  }
}

int RingParams::valuation(Scalar x) const noexcept {
  x = reduce(x);
  if (x == 0) return r_;
  int v = 0;
  while (x % p_ == 0) {
    x /= p_;
    ++v;
  }
  return v;
}

Scalar RingParams::inverse(Scalar unit) const {
  const Scalar m = modulus();
  Scalar a = reduce(unit);
  if (a % p_ == 0) throw InvalidArgument("element is not a unit");
  // extended Euclid on (a, m)
  Scalar old_r = a, rr = m, old_s = 1, s = 0;
  while (rr != 0) {
    const Scalar q = old_r / rr;
    Scalar t = old_r - q * rr;
    old_r = rr;
    rr = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return reduce(old_s);
}

int RingParams::order(Scalar x) const noexcept {
  x = reduce(x);
  if (x == 0) return 0;
  return r_ - valuation(x);
}

Residue operator+(const Residue& a, const Residue& b) {
  if (!(a.ring_ == b.ring_)) throw InvalidArgument("ring mismatch");
  return Residue(a.ring_, a.ring_.add(a.value_, b.value_));
}

Residue operator-(const Residue& a, const Residue& b) {
  if (!(a.ring_ == b.ring_)) throw InvalidArgument("ring mismatch");
  return Residue(a.ring_, a.ring_.sub(a.value_, b.value_));
}

Residue operator*(const Residue& a, const Residue& b) {
  if (!(a.ring_ == b.ring_)) throw InvalidArgument("ring mismatch");
  return Residue(a.ring_, a.ring_.mul(a.value_, b.value_));
}

DigitVector padic_digits(const Residue& x) {
  const RingParams& ring = x.ring();
  DigitVector out;
  out.digits.reserve(static_cast<std::size_t>(ring.r()));
  Scalar v = x.value();
  for (int i = 0; i < ring.r(); ++i) {
    out.digits.push_back(v % ring.p());
    v /= ring.p();
  }
  return out;
}

Residue from_digits(const DigitVector& d, const RingParams& ring) {
  if (d.digits.size() != static_cast<std::size_t>(ring.r())) {
    throw InvalidArgument("digit vector must have exactly r entries");
  }
  Scalar value = 0;
  for (int i = ring.r() - 1; i >= 0; --i) {
    const Scalar digit = d.digits[static_cast<std::size_t>(i)];
    if (digit < 0 || digit >= ring.p()) {
      throw InvalidArgument("digit " + std::to_string(digit) + " outside [0, p)");
    }
    value = value * ring.p() + digit;
  }
  return Residue(ring, value);
}

bool is_unit(const Residue& x) { return x.ring().is_unit(x.value()); }

int order(const Residue& x) { return x.ring().order(x.value()); }

}  // namespace zpr
