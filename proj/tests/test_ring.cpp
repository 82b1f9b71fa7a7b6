#include "doctest.h"

#include "zpr/errors.hpp"
#include "zpr/ring.hpp"

using namespace zpr;

TEST_CASE("ring parameters are validated") {
  CHECK_THROWS_AS(RingParams(4, 2), InvalidArgument);
  CHECK_THROWS_AS(RingParams(5, 0), InvalidArgument);
  CHECK_THROWS_AS(RingParams(2, 31), InvalidArgument);
  CHECK_NOTHROW(RingParams(2, 30));
  const RingParams z25(5, 2);
  CHECK(z25.modulus() == 25);
  CHECK(z25.power(0) == 1);
  CHECK(z25.power(2) == 25);
}

TEST_CASE("p-adic digits round trip for every residue") {
  for (auto [p, r] : {std::pair<Scalar, int>{2, 3}, {3, 2}, {5, 2}, {7, 1}, {2, 1}}) {
    const RingParams ring(p, r);
    for (Scalar x = 0; x < ring.modulus(); ++x) {
      const DigitVector d = padic_digits(Residue(ring, x));
      REQUIRE(d.digits.size() == static_cast<std::size_t>(r));
      Scalar back = 0;
      for (int i = r - 1; i >= 0; --i) back = back * p + d.digits[static_cast<std::size_t>(i)];
      CHECK(back == x);
      CHECK(from_digits(d, ring).value() == x);
    }
  }
}

TEST_CASE("digits of 17 in Z_25") {
  const RingParams z25(5, 2);
  CHECK(padic_digits(Residue(z25, 17)).digits == std::vector<Scalar>{2, 3});
  CHECK_THROWS_AS(from_digits(DigitVector{{5, 0}}, z25), InvalidArgument);
  CHECK_THROWS_AS(from_digits(DigitVector{{1}}, z25), InvalidArgument);
}

TEST_CASE("units, inverses, valuation and order agree with brute force") {
  const RingParams ring(3, 3);
  for (Scalar x = 0; x < ring.modulus(); ++x) {
    int ord = 0;
    while (ring.mul(ring.power(ord), x) != 0) ++ord;
    CHECK(ring.order(x) == ord);
    int val = 0;
    while (val < ring.r() && x % ring.power(val + 1) == 0) ++val;
    CHECK(ring.valuation(x) == val);
    if (ring.is_unit(x)) {
      CHECK(ring.mul(x, ring.inverse(x)) == 1);
    } else {
      CHECK_THROWS_AS(ring.inverse(x), InvalidArgument);
    }
  }
  CHECK(order(Residue(ring, 0)) == 0);
  CHECK(order(Residue(ring, 9)) == 1);
  CHECK(order(Residue(ring, 3)) == 2);
}

TEST_CASE("residue arithmetic") {
  const RingParams z8(2, 3);
  CHECK((Residue(z8, 5) * Residue(z8, 7)).value() == 3);
  CHECK((Residue(z8, 5) - Residue(z8, 7)).value() == 6);
  CHECK((Residue(z8, 5) + Residue(z8, 7)).value() == 4);
  CHECK_THROWS_AS(Residue(z8, 1) + Residue(RingParams(3, 1), 1), InvalidArgument);
  CHECK(is_unit(Residue(z8, 3)));
  CHECK_FALSE(is_unit(Residue(z8, 6)));
}
