#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "hstab/chars.hpp"
#include "hstab/groups.hpp"

using namespace hstab;
using namespace hstab::chars;
using exact::BigInt;
using exact::BigRational;
using exact::ZpContext;
using exact::ZpRational;

namespace {

exact::ZpContextPtr ctx2() {
  static auto c = ZpContext::make(2);
  return c;
}

std::complex<double> turn(double t) {
  return {std::cos(2.0 * std::numbers::pi * t), std::sin(2.0 * std::numbers::pi * t)};
}

} // namespace

TEST_CASE("character evaluation") {
  auto c = ctx2();
  Character chi = Character::torsion(c, 3, 1);
  CHECK(std::abs(chi.eval(ZpRational::one(c)) - turn(1.0 / 3)) < 1e-14);

  // rho_3(1/2): 2^-1 mod 3 = 2, so the phase is 2/3
  ZpRational half(c, 1, 1);
  CHECK(std::abs(chi.eval(half) - turn(2.0 / 3)) < 1e-14);
  // sanity oracle: chi(1/2)^2 = chi(1) and chi(1/2)^3 = 1
  auto v = chi.eval(half);
  CHECK(std::abs(v * v - chi.eval(ZpRational::one(c))) < 1e-14);
  CHECK(std::abs(v * v * v - 1.0) < 1e-14);

  Character ang = Character::angle(c, BigRational(1, 4));
  CHECK(std::abs(ang.eval(ZpRational::integer(c, 2)) - std::complex<double>(-1, 0)) < 1e-14);
}

TEST_CASE("character order") {
  auto c = ctx2();
  CHECK(Character(c, 0, 15, 5).order() == 3); // (15,5) reduces to (3,1)
  CHECK(Character(ZpContext::make(5), 0, 6, 2).order() == 3); // 6 / gcd(6,2)
  CHECK(Character(c, 0, 6 * 2 + 3, 0).order() == 1);
  CHECK(Character::trivial(c).order() == 1);
  CHECK_FALSE(Character::angle(c, BigRational(1, 2)).order().has_value());
  // chi^N(1/2^e) != 1 for a nonzero angle: spot check N = 2, e = 3
  Character chi = Character::angle(c, BigRational(1, 2));
  auto v = chi.eval(ZpRational(c, 1, 3));
  CHECK(std::abs(v * v - 1.0) > 0.1);
}

TEST_CASE("character constructor validates the torsion modulus") {
  auto c = ctx2();
  CHECK_THROWS_AS(Character::torsion(c, 4, 1), InvalidOrder);
  CHECK_THROWS_AS(Character::torsion(c, 0, 0), InvalidOrder);
  CHECK_NOTHROW(Character::torsion(c, 9, 2));
}

TEST_CASE("enumerate_order_n_chars") {
  auto c = ctx2();
  auto chars3 = enumerate_order_n_chars(c, 3);
  REQUIRE(chars3.size() == 2);
  CHECK(chars3[0].torsion_j() == 1);
  CHECK(chars3[1].torsion_j() == 2);
  for (const auto& ch : chars3) CHECK(ch.order() == 3);

  auto chars1 = enumerate_order_n_chars(c, 1);
  REQUIRE(chars1.size() == 1);
  CHECK(chars1[0].is_trivial());

  CHECK_THROWS_AS(enumerate_order_n_chars(c, 2), InvalidOrder);
  CHECK_THROWS_AS(enumerate_order_n_chars(ZpContext::make(3), 9), InvalidOrder);
  CHECK(enumerate_order_n_chars(c, 9).size() == 6);
}

TEST_CASE("multiplicativity of evaluation") {
  auto c = ctx2();
  Sampler s(41);
  for (int t = 0; t < 2000; ++t) {
    Character chi = rand_character(s, c, 9 * 16, 15);
    ZpRational x = groups::rand_zq(s, c), y = groups::rand_zq(s, c);
    CHECK(std::abs(chi.eval(x + y) - chi.eval(x) * chi.eval(y)) < 1e-12);
  }
}

TEST_CASE("finite order characters are roots of unity; chi(1)=1 forces triviality") {
  auto c = ctx2();
  Sampler s(43);
  for (int t = 0; t < 500; ++t) {
    long long n = rand_coprime_order(s, c, 30);
    Character chi = rand_order_n_char(s, c, n);
    auto ord = chi.order();
    REQUIRE(ord.has_value());
    std::complex<double> v = chi.eval(ZpRational::one(c));
    std::complex<double> acc = 1.0;
    for (long long k = 0; k < *ord; ++k) acc *= v;
    CHECK(std::abs(acc - 1.0) < 1e-12);
    if (std::abs(v - 1.0) < 1e-12) {
      // finite order with chi(1) = 1: trivial on the whole probe set
      for (const auto& [a, b] : dual_probe_set(c)) {
        CHECK(std::abs(chi.eval(a) - 1.0) < 1e-12);
        CHECK(std::abs(chi.eval(b) - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("rho is representation independent") {
  auto c = ctx2();
  Sampler s(45);
  for (int t = 0; t < 2000; ++t) {
    long long m = rand_coprime_order(s, c, 99);
    BigInt k(s.int_in(-100000, 100000));
    unsigned e = static_cast<unsigned>(s.int_in(0, 8));
    // the same ring element written as k/p^e and kp/p^{e+1}
    CHECK(Character::rho(c, k, e, m) == Character::rho(c, k * c->p_big(), e + 1, m));
  }
}

TEST_CASE("dual action") {
  auto c = ctx2();
  Character triv = Character::trivial(c);
  Character chi2 = Character::angle(c, BigRational(3, 8));
  DualPoint fixed(triv, chi2);
  DualPoint moved = dual_alpha(fixed);
  CHECK(moved.chi2 == chi2); // trivial chi1 gives a fixed point

  Character ord3 = Character::torsion(c, 3, 1);
  DualPoint pt(ord3, triv);
  DualPoint cur = pt;
  for (int i = 0; i < 3; ++i) cur = dual_alpha(cur);
  CHECK(cur.chi2 == pt.chi2);
  CHECK(dual_orbit_size(pt) == 3);

  for (long long n : {1LL, 3LL, 5LL, 7LL, 9LL}) {
    Sampler s(47 + static_cast<std::uint64_t>(n));
    DualPoint q(rand_order_n_char(s, c, n), rand_character(s, c, 32, 9));
    CHECK(dual_orbit_size(q) == n);
  }
}

TEST_CASE("periodic point characterization") {
  auto c = ctx2();
  Character triv = Character::trivial(c);
  CHECK(is_periodic_point(DualPoint(triv, Character::angle(c, BigRational(1, 3))), 1));

  Character ord3 = Character::torsion(c, 3, 2);
  DualPoint pt(ord3, Character::angle(c, BigRational(5, 16)));
  CHECK(is_periodic_point(pt, 3));
  CHECK_FALSE(is_periodic_point(pt, 1));
  CHECK_FALSE(is_periodic_point(pt, 6)); // p | 6
  CHECK_FALSE(is_periodic_point(pt, 9));

  // any point fails a period divisible by p
  CHECK_FALSE(is_periodic_point(DualPoint(triv, triv), 2));
}

TEST_CASE("dual action period equals chi1 order on random points") {
  auto c = ctx2();
  Sampler s(51);
  for (int t = 0; t < 200; ++t) {
    long long n = rand_coprime_order(s, c, 25);
    DualPoint pt(rand_order_n_char(s, c, n), rand_character(s, c, 64, 10));
    CHECK(dual_orbit_size(pt) == n);
    CHECK(is_periodic_point(pt, n));
  }
}
