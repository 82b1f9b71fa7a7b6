#pragma once

#include <cstdint>
#include <vector>

namespace zpr {

using Scalar = std::int64_t;

/// The ring Z_{p^r}. Construction checks that p is prime and that p^r stays
/// below 2^31, so products of two canonical residues fit in a Scalar.
class RingParams {
 public:
  RingParams(Scalar p, int r);

  Scalar p() const noexcept { return p_; }
  int r() const noexcept { return r_; }
  Scalar modulus() const noexcept { return powers_.back(); }
  /// p^i for 0 <= i <= r.
  Scalar power(int i) const { return powers_.at(static_cast<std::size_t>(i)); }

  Scalar reduce(Scalar x) const noexcept {
    Scalar m = x % modulus();
    return m < 0 ? m + modulus() : m;
  }
  Scalar add(Scalar a, Scalar b) const noexcept { return reduce(a + b); }
  Scalar sub(Scalar a, Scalar b) const noexcept { return reduce(a - b); }
  Scalar mul(Scalar a, Scalar b) const noexcept { return reduce(a * b); }
  Scalar neg(Scalar a) const noexcept { return reduce(-a); }

  /// Largest v with p^v | x; r for x = 0.
  int valuation(Scalar x) const noexcept;
  bool is_unit(Scalar x) const noexcept { return reduce(x) % p_ != 0; }
  /// Multiplicative inverse of a unit. Throws InvalidArgument otherwise.
  Scalar inverse(Scalar unit) const;
  /// Smallest j with p^j x = 0, with order(0) = 0.
  int order(Scalar x) const noexcept;

  /// The field Z_p underlying this ring.
  RingParams residue_field() const { return RingParams(p_, 1); }

  friend bool operator==(const RingParams& a, const RingParams& b) noexcept {
    return a.p_ == b.p_ && a.r_ == b.r_;
  }

 private:
  Scalar p_;
  int r_;
  std::vector<Scalar> powers_;
};

bool is_prime(Scalar n) noexcept;

/// An element of Z_{p^r}, always held by its canonical representative.
class Residue {
 public:
  Residue(RingParams ring, Scalar value) : ring_(ring), value_(ring_.reduce(value)) {}

  Scalar value() const noexcept { return value_; }
  const RingParams& ring() const noexcept { return ring_; }

  friend Residue operator+(const Residue& a, const Residue& b);
  friend Residue operator-(const Residue& a, const Residue& b);
  friend Residue operator*(const Residue& a, const Residue& b);
  friend bool operator==(const Residue& a, const Residue& b) noexcept {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }

 private:
  RingParams ring_;
  Scalar value_;
};

/// p-adic digits, least significant first; always exactly r entries in [0, p).
struct DigitVector {
  std::vector<Scalar> digits;

  friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

DigitVector padic_digits(const Residue& x);
/// Inverse of padic_digits. Throws InvalidArgument on a wrong length or a
/// digit outside [0, p).
Residue from_digits(const DigitVector& d, const RingParams& ring);
bool is_unit(const Residue& x);
int order(const Residue& x);

}  // namespace zpr
