#include <catch2/catch_amalgamated.hpp>

#include "hstab/reps.hpp"

using namespace hstab;
using namespace hstab::reps;
using chars::Character;
using exact::BigRational;
using exact::ZpContext;
using exact::ZpRational;
using groups::GpElement;
using numkernel::CMatrix;
using numkernel::hs_norm;

namespace {

exact::ZpContextPtr ctx2() {
  static auto c = ZpContext::make(2);
  return c;
}

GpElement gp(long long an, unsigned ae, long long bn, unsigned be, long long c) {
  return {ZpRational(ctx2(), an, ae), ZpRational(ctx2(), bn, be), c};
}

IrrepParams params_ord3() {
  return IrrepParams(Character::torsion(ctx2(), 3, 1), Character::trivial(ctx2()), 0);
}

cplx turn(double t) {
  return {std::cos(2.0 * std::numbers::pi * t), std::sin(2.0 * std::numbers::pi * t)};
}

} // namespace

TEST_CASE("irrep matrices") {
  IrrepParams p = params_ord3();
  CHECK(p.dim() == 3);

  // pi(0,0,1) with lambda = 1 is the plain cyclic shift
  CMatrix s = irrep_eval(p, gp(0, 0, 0, 0, 1));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(s.at(i, j) == (j == (i + 1) % 3 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));

  // pi(0,1,0) = diag(1, zeta, zeta^2)
  CMatrix d = irrep_eval(p, gp(0, 0, 1, 0, 0));
  CHECK(std::abs(d.at(0, 0) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(d.at(1, 1) - turn(1.0 / 3)) < 1e-14);
  CHECK(std::abs(d.at(2, 2) - turn(2.0 / 3)) < 1e-14);
  CHECK(std::abs(d.at(0, 1)) == 0.0);

  CHECK(hs_norm(irrep_eval(p, GpElement::identity(ctx2())) - CMatrix::identity(3)) == 0.0);
}

TEST_CASE("irreps are unitary and multiplicative") {
  auto c = ctx2();
  Sampler s(81);
  for (int t = 0; t < 1000; ++t) {
    IrrepParams p = rand_irrep(s, c, 50);
    GpElement g = groups::rand_gp(s, c), h = groups::rand_gp(s, c);
    CMatrix mg = irrep_eval(p, g), mh = irrep_eval(p, h);
    CHECK(hs_norm(mg.adjoint() * mg - CMatrix::identity(mg.dim())) < 1e-12);
    CHECK(hs_norm(mg * mh - irrep_eval(p, g * h)) < 1e-10);
  }
}

TEST_CASE("shift conjugation implements alpha") {
  auto c = ctx2();
  Sampler s(83);
  for (int t = 0; t < 1000; ++t) {
    IrrepParams p = rand_irrep(s, c, 30);
    GpElement g = groups::rand_gp(s, c);
    g.c = 0;
    CMatrix t1 = irrep_eval(p, gp(0, 0, 0, 0, 1));
    CMatrix lhs = t1 * irrep_eval(p, g) * irrep_eval(p, gp(0, 0, 0, 0, -1));
    auto img = groups::alpha_pow({g.a, g.b}, 1);
    CMatrix rhs = irrep_eval(p, {img.first, img.second, 0});
    CHECK(hs_norm(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("extreme trace closed form") {
  ExtremeTrace t{params_ord3()};
  // chi1(1) != 1: the zero branch
  CHECK(std::abs(extreme_trace_eval(t, gp(0, 0, 1, 0, 0))) == 0.0);
  // chi1(3) = 1 and 3 | 0: value chi1(1) chi2(3) = zeta
  CHECK(std::abs(extreme_trace_eval(t, gp(1, 0, 3, 0, 0)) - turn(1.0 / 3)) < 1e-14);
  CHECK(std::abs(extreme_trace_eval(t, GpElement::identity(ctx2())) - cplx(1.0, 0.0)) < 1e-14);
  // n does not divide c: zero
  CHECK(std::abs(extreme_trace_eval(t, gp(0, 0, 0, 0, 1))) == 0.0);
}

TEST_CASE("closed form matches the matrix trace") {
  auto c = ctx2();
  Sampler s(85);
  for (int t = 0; t < 1000; ++t) {
    IrrepParams p = rand_irrep(s, c, 50);
    GpElement g = groups::rand_gp(s, c);
    cplx closed = extreme_trace_eval(ExtremeTrace{p}, g);
    cplx matrix = irrep_eval(p, g).normalized_trace();
    CHECK(std::abs(closed - matrix) < 1e-10);
  }
}

TEST_CASE("trace types") {
  auto c = ctx2();
  ExtremeTrace triv{IrrepParams(Character::trivial(c), Character::angle(c, BigRational(1, 3)),
                                BigRational(1, 8))};
  CHECK(trace_type(triv) == TraceType::Type1);
  ExtremeTrace t2{params_ord3()};
  CHECK(trace_type(t2) == TraceType::Type2);

  // type-1 traces evaluate to 1 on (a, 0, 0)
  for (auto a : {ZpRational(c, 1, 1), ZpRational(c, 1, 2), ZpRational(c, 5, 3)}) {
    GpElement g{a, ZpRational::zero(c), 0};
    CHECK(std::abs(extreme_trace_eval(triv, g) - cplx(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("fd traces and the worked 0.9/0.1 mixture") {
  auto c = ctx2();
  ExtremeTrace type1{IrrepParams(Character::trivial(c), Character::trivial(c), 0)};
  ExtremeTrace type2{params_ord3()};
  FDTrace mix = FDTrace::make({{0.9, type1}, {0.1, type2}});

  // single component equals the extreme trace
  FDTrace single = FDTrace::make({{1.0, type2}});
  GpElement probe = gp(3, 1, -5, 2, 0);
  CHECK(std::abs(fd_trace_eval(single, probe) - extreme_trace_eval(type2, probe)) == 0.0);

  CHECK(std::abs(fd_trace_eval(mix, gp(0, 0, 1, 0, 0)) - cplx(0.9, 0.0)) < 1e-14);

  // at (1/2, 0, 0): 0.9 + 0.1 zeta^2
  cplx expected = 0.9 + 0.1 * turn(2.0 / 3);
  CHECK(std::abs(fd_trace_eval(mix, gp(1, 1, 0, 0, 0)) - expected) < 1e-14);

  DichotomyResult r = dichotomy_check(mix, ZpRational(c, 1, 1));
  CHECK(r.lhs == Catch::Approx(0.1 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.rhs == Catch::Approx(0.2).epsilon(1e-12));
  CHECK(r.ok);
}

TEST_CASE("fd trace weight validation") {
  auto c = ctx2();
  ExtremeTrace t{IrrepParams(Character::trivial(c), Character::trivial(c), 0)};
  CHECK_THROWS_AS(FDTrace::make({{0.4, t}, {0.4, t}}), std::invalid_argument);
  CHECK_THROWS_AS(FDTrace::make({{-0.1, t}, {1.1, t}}), std::invalid_argument);
}

TEST_CASE("dichotomy bound on pure type-1 traces") {
  auto c = ctx2();
  Sampler s(87);
  for (int t = 0; t < 100; ++t) {
    Character chi2 = chars::rand_character(s, c, 144, 1);
    long long den = s.int_in(1, 64);
    FDTrace pure = FDTrace::make(
        {{1.0, ExtremeTrace{IrrepParams(Character::trivial(c), chi2,
                                        BigRational(s.int_in(0, den - 1), den))}}});
    DichotomyResult r = dichotomy_check(pure, ZpRational(c, 1, static_cast<unsigned>(s.int_in(0, 6))));
    CHECK(r.lhs <= 1e-12);
    CHECK(r.ok);
  }
}

TEST_CASE("dichotomy property on random fd traces") {
  auto c = ctx2();
  Sampler s(89);
  for (int t = 0; t < 2000; ++t) {
    FDTrace tr = rand_fd_trace(s, c);
    for (unsigned k = 0; k <= 6; ++k) {
      DichotomyResult r = dichotomy_check(tr, ZpRational(c, 1, k));
      CHECK(r.ok);
    }
  }
}

TEST_CASE("perturbation certificate") {
  CHECK(perturbation_certificate(cplx(1.0, 0.0), cplx(0.0, 0.0)) ==
        Catch::Approx(1.0 / 3.0).margin(1e-15));
  CHECK(perturbation_certificate(cplx(0.9, 0.0), cplx(0.1, 0.0)) ==
        Catch::Approx(0.7 / 3.0).margin(1e-12));
  CHECK(perturbation_certificate(cplx(0.4, 0.0), cplx(0.9, 0.0)) == 0.0);
  CHECK_THROWS_AS(perturbation_certificate(cplx(1.1, 0.0), cplx(0.0, 0.0)), DomainError);
  CHECK_THROWS_AS(perturbation_certificate(cplx(0.0, 0.0), cplx(0.0, 1.2)), DomainError);
}

TEST_CASE("direct sums evaluate blockwise") {
  auto c = ctx2();
  Sampler s(91);
  std::vector<IrrepParams> blocks = rand_direct_sum(s, c, 16);
  long long total = 0;
  for (const auto& b : blocks) {
    total += b.dim();
    CHECK(b.dim() % 2 == 1); // orders coprime to p = 2
  }
  CHECK(total == 16);
  GpElement g = groups::rand_gp(s, c), h = groups::rand_gp(s, c);
  CMatrix mg = direct_sum_eval(blocks, g), mh = direct_sum_eval(blocks, h);
  CHECK(mg.dim() == 16);
  CHECK(hs_norm(mg * mh - direct_sum_eval(blocks, g * h)) < 1e-10);
  CHECK(hs_norm(mg.adjoint() * mg - CMatrix::identity(16)) < 1e-12);
}
