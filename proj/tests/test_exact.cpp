#include <catch2/catch_amalgamated.hpp>

#include "hstab/exact.hpp"
#include "hstab/rng.hpp"

using namespace hstab;
using exact::BigInt;
using exact::BigRational;
using exact::PruferResidue;
using exact::ZpContext;
using exact::ZpRational;

namespace {

exact::ZpContextPtr ctx2() {
  static auto c = ZpContext::make(2);
  return c;
}

ZpRational zq(long long n, unsigned e) { return ZpRational(ctx2(), BigInt(n), e); }

} // namespace

TEST_CASE("context rejects non-primes") {
  CHECK_THROWS_AS(ZpContext::make(4), std::invalid_argument);
  CHECK_THROWS_AS(ZpContext::make(1), std::invalid_argument);
  CHECK_NOTHROW(ZpContext::make(2));
  CHECK_NOTHROW(ZpContext::make(101));
}

TEST_CASE("addition normalizes") {
  CHECK(zq(1, 1) + zq(1, 1) == zq(1, 0));  // 1/2 + 1/2 = 1
  CHECK(zq(1, 2) + zq(1, 2) == zq(1, 1));  // 1/4 + 1/4 = 1/2
  CHECK((zq(3, 3) + zq(-3, 3)).is_zero()); // 3/8 - 3/8 = 0
}

TEST_CASE("multiplication normalizes") {
  CHECK(zq(1, 1) * zq(1, 1) == zq(1, 2));
  CHECK((zq(3, 2) * zq(0, 0)).is_zero());
  CHECK(zq(5, 3) * zq(8, 0) == zq(5, 0));
}

TEST_CASE("from_fraction") {
  auto c = ctx2();
  CHECK(ZpRational::from_fraction(c, 1, 4) == zq(1, 2));
  CHECK(ZpRational::from_fraction(c, 2, 4) == zq(1, 1));
  CHECK(ZpRational::from_fraction(c, 1, -4) == zq(-1, 2));
  CHECK_THROWS_AS(ZpRational::from_fraction(c, 1, 3), NotInRing);
  CHECK_THROWS_AS(ZpRational::from_fraction(c, 5, 12), NotInRing);
  CHECK_NOTHROW(ZpRational::from_fraction(c, 3, 12)); // reduces to 1/4
  CHECK_THROWS_AS(ZpRational::from_fraction(c, 1, 0), std::invalid_argument);
}

TEST_CASE("mod1") {
  CHECK(zq(5, 2).mod1() == PruferResidue(ctx2(), 1, 2)); // 5/4 -> 1/4
  CHECK(zq(3, 0).mod1().is_zero());
  // -1/8 -> 7/8, frozen from -1/8 + 1 = 7/8 in exact rational arithmetic
  CHECK(zq(-1, 3).mod1() == PruferResidue(ctx2(), 7, 3));
  CHECK(zq(-1, 3).mod1().to_rational() == BigRational(7, 8));
}

TEST_CASE("depth") {
  CHECK(zq(1, 3).depth() == 3);
  CHECK(zq(6, 0).depth() == 0);
  CHECK(zq(0, 0).depth() == 0);
  CHECK(ZpRational(ctx2(), 4, 2).depth() == 0); // 4/4 normalizes to 1
}

TEST_CASE("normal form invariant") {
  Sampler s(7);
  auto c = ctx2();
  for (int t = 0; t < 2000; ++t) {
    ZpRational x(c, BigInt(s.int_in(-1 << 20, 1 << 20)), static_cast<unsigned>(s.int_in(0, 12)));
    if (x.is_zero()) {
      CHECK(x.exp() == 0);
    } else if (x.exp() > 0) {
      CHECK(x.num() % 2 != 0);
    }
  }
}

TEST_CASE("ring axioms on random triples") {
  Sampler s(11);
  auto c = ctx2();
  for (int t = 0; t < 2000; ++t) {
    BigInt xnum = BigInt(s.next_u64()) * (s.int_in(0, 1) ? 1 : -1); // |num| < 2^64
    ZpRational x(c, xnum, static_cast<unsigned>(s.int_in(0, 40)));
    ZpRational y(c, BigInt(s.int_in(-100000, 100000)), static_cast<unsigned>(s.int_in(0, 40)));
    ZpRational z(c, BigInt(s.int_in(-100000, 100000)), static_cast<unsigned>(s.int_in(0, 40)));
    CHECK((x + y) + z == x + (y + z));
    CHECK(x + y == y + x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * y == y * x);
    CHECK(x * (y + z) == x * y + x * z);
    // exact cross-check against plain rational arithmetic
    CHECK((x * y + z).to_rational() == x.to_rational() * y.to_rational() + z.to_rational());
  }
}

TEST_CASE("mod1 is invariant under integer shifts") {
  Sampler s(13);
  auto c = ctx2();
  for (int t = 0; t < 1000; ++t) {
    ZpRational x(c, BigInt(s.int_in(-100000, 100000)), static_cast<unsigned>(s.int_in(0, 10)));
    ZpRational k = ZpRational::integer(c, s.int_in(-50, 50));
    CHECK((x + k).mod1() == x.mod1());
  }
}

TEST_CASE("from_fraction round-trips through exact rationals") {
  Sampler s(17);
  auto c = ctx2();
  for (int t = 0; t < 1000; ++t) {
    BigInt n(s.int_in(-100000, 100000));
    unsigned e = static_cast<unsigned>(s.int_in(0, 10));
    BigInt scale(s.int_in(1, 50));
    BigInt d = c->p_pow(e) * scale;
    ZpRational x = ZpRational::from_fraction(c, n * scale, d);
    CHECK(x.to_rational() == BigRational(n * scale, d));
  }
}

TEST_CASE("mixed contexts are rejected") {
  auto c3 = ZpContext::make(3);
  ZpRational x = zq(1, 1);
  ZpRational y(c3, 1, 1);
  CHECK_THROWS_AS(x + y, MixedContext);
  CHECK_THROWS_AS(x * y, MixedContext);
  CHECK_THROWS_AS(x == y, MixedContext);
}

TEST_CASE("prufer arithmetic") {
  auto c = ctx2();
  PruferResidue half(c, 1, 1);
  CHECK((half + half).is_zero());
  CHECK(half + PruferResidue(c, 1, 2) == PruferResidue(c, 3, 2));
  CHECK(-PruferResidue(c, 1, 2) == PruferResidue(c, 3, 2));
  CHECK(half.times(3) == half);
  CHECK(half.times(2).is_zero());
  CHECK(half.times(-1) == half);
}
