#pragma once

#include <complex>
#include <vector>

#include "hstab/chars.hpp"
#include "hstab/groups.hpp"
#include "hstab/numkernel.hpp"

namespace hstab::reps {

using chars::Character;
using exact::BigRational;
using exact::ZpContextPtr;
using exact::ZpRational;
using groups::GpElement;
using numkernel::CMatrix;
using numkernel::cplx;

/// Data of an irreducible representation of G_p: a finite-order character
/// chi1 (its order n is the dimension), an arbitrary character chi2, and the
/// angle theta of the scalar lambda = exp(2 pi i theta) attached to the
/// cyclic shift.
struct IrrepParams {
  Character chi1;
  Character chi2;
  BigRational lambda_angle;

  IrrepParams(Character c1, Character c2, BigRational theta)
      : chi1(std::move(c1)), chi2(std::move(c2)), lambda_angle(std::move(theta)) {
    if (chi1.q() != 0)
      throw std::invalid_argument("chi1 must have finite order (zero angle part)");
    // reduce the lambda angle mod 1
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    exact::BigInt n = numerator(lambda_angle), d = denominator(lambda_angle);
    exact::BigInt r = n % d;
    if (r < 0) r += d;
    lambda_angle = BigRational(r, d);
  }

  long long dim() const { return *chi1.order(); }
};

/// pi(a,b,c) as an n x n unitary: pi(a,b,0) = diag_i chi1(a) chi2(b) chi1(b)^i
/// and pi(0,0,1) = lambda * (cyclic shift). The entry (i, j) is nonzero iff
/// j = i + c mod n, with exact rational phase
///   phase1(a) + phase2(b) + i * phase1(b) + c * theta.
inline CMatrix irrep_eval(const IrrepParams& params, const GpElement& g) {
  const long long n = params.dim();
  CMatrix m(static_cast<int>(n));
  BigRational base = params.chi1.phase(g.a) + params.chi2.phase(g.b) +
                     BigRational(g.c) * params.lambda_angle;
  BigRational step = params.chi1.phase(g.b);
  long long shift = ((g.c % n) + n) % n;
  for (long long i = 0; i < n; ++i) {
    long long j = (i + shift) % n;
    m.at(static_cast<int>(i), static_cast<int>(j)) =
        Character::unit(base + BigRational(i) * step);
  }
  return m;
}

struct ExtremeTrace {
  IrrepParams params;
};

enum class TraceType { Type1, Type2 };

/// Type 1 iff chi1(1) = 1, which forces chi1 trivial for finite order.
inline TraceType trace_type(const ExtremeTrace& t) {
  return t.params.chi1.is_trivial() ? TraceType::Type1 : TraceType::Type2;
}

/// Closed form of the normalized trace of the irreducible representation:
/// chi1(a) chi2(b) lambda^c when chi1(b) = 1 and n | c, else 0. The branch
/// conditions are decided exactly on rational phases.
inline cplx extreme_trace_eval(const ExtremeTrace& t, const GpElement& g) {
  const long long n = t.params.dim();
  if (g.c % n != 0) return {0.0, 0.0};
  BigRational pb = t.params.chi1.phase(g.b);
  using boost::multiprecision::denominator;
  if (denominator(pb) != 1) return {0.0, 0.0}; // chi1(b) != 1
  BigRational phase = t.params.chi1.phase(g.a) + t.params.chi2.phase(g.b) +
                      BigRational(g.c) * t.params.lambda_angle;
  return Character::unit(phase);
}

/// Convex combination of extreme traces.
struct FDTrace {
  struct Component {
    double weight;
    ExtremeTrace extreme;
  };
  std::vector<Component> components;

  static FDTrace make(std::vector<Component> comps) {
    double sum = 0.0;
    for (const Component& c : comps) {
      if (!(c.weight > 0.0) || c.weight > 1.0)
        throw std::invalid_argument("FDTrace: weights must lie in (0, 1]");
      sum += c.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("FDTrace: weights must sum to 1");
    FDTrace t;
    t.components = std::move(comps);
    return t;
  }
};

inline cplx fd_trace_eval(const FDTrace& t, const GpElement& g) {
  cplx acc = 0.0;
  for (const FDTrace::Component& c : t.components)
    acc += c.weight * extreme_trace_eval(c.extreme, g);
  return acc;
}

struct DichotomyResult {
  double lhs = 0.0; // |tau(a,0,0) - 1|
  double rhs = 0.0; // 2 (1 - |tau(0,1,0)|)
  bool ok = false;
};

/// Finite-scale form of the trace dichotomy. Writing tau as mu * tau_1 +
/// (1 - mu) * tau_2 with tau_1 the type-1 mass: tau(0,1,0) picks up only
/// type-1 components (each of modulus <= 1), so mu >= |tau(0,1,0)|; type-1
/// components are 1 at (a,0,0) while type-2 components have modulus <= 1,
/// hence |tau(a,0,0) - 1| <= 2 (1 - mu) <= 2 (1 - |tau(0,1,0)|).
inline DichotomyResult dichotomy_check(const FDTrace& t, const ZpRational& a) {
  const ZpContextPtr& ctx = a.ctx();
  GpElement probe_a{a, ZpRational::zero(ctx), 0};
  GpElement probe_b{ZpRational::zero(ctx), ZpRational::one(ctx), 0};
  DichotomyResult r;
  r.lhs = std::abs(fd_trace_eval(t, probe_a) - cplx(1.0, 0.0));
  r.rhs = 2.0 * (1.0 - std::abs(fd_trace_eval(t, probe_b)));
  r.ok = r.lhs <= r.rhs + 1e-9;
  return r;
}

/// Lower bound on max_g ||pi_F(g) - sigma(g)||_2 over the probe pair
/// g in {(0,1,0), (1/p,0,0)}, valid for every unitary representation sigma of
/// the same dimension. t1 and t0 are the measured normalized traces of the
/// approximate homomorphism at (0,1,0) and (1/p,0,0).
///
/// Derivation: let d be that max and tau = Tr_n o sigma. Cauchy-Schwarz gives
/// |Tr_n X| <= ||X||_2, so |tau(0,1,0)| >= |t1| - d and
/// |tau(1/p,0,0)| <= |t0| + d. The dichotomy bound forces
///   |tau(1/p,0,0)| >= 1 - 2 (1 - |tau(0,1,0)|) >= 1 - 2 (1 - |t1|) - 2d,
/// and combining the two estimates yields 3d >= 1 - 2 (1 - |t1|) - |t0|.
inline double perturbation_certificate(cplx t1, cplx t0) {
  if (std::abs(t1) > 1.0 + 1e-9 || std::abs(t0) > 1.0 + 1e-9)
    throw DomainError("perturbation_certificate: traces must have modulus <= 1");
  double bound = (1.0 - 2.0 * (1.0 - std::abs(t1)) - std::abs(t0)) / 3.0;
  return std::max(0.0, bound);
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

inline IrrepParams rand_irrep_of_order(Sampler& s, const ZpContextPtr& ctx, long long n) {
  Character chi1 = chars::rand_order_n_char(s, ctx, n);
  long long p4 = ctx->p() * ctx->p() * ctx->p() * ctx->p();
  Character chi2 = chars::rand_character(s, ctx, 9 * p4, 12);
  long long den = s.int_in(1, 64);
  BigRational theta(s.int_in(0, den - 1), den);
  return IrrepParams(std::move(chi1), std::move(chi2), std::move(theta));
}

/// chi1 of random order <= max_order coprime to p; chi2 with angle
/// denominator <= 9 p^4 and small torsion; lambda angle denominator <= 64.
inline IrrepParams rand_irrep(Sampler& s, const ZpContextPtr& ctx, long long max_order = 30) {
  return rand_irrep_of_order(s, ctx, chars::rand_coprime_order(s, ctx, max_order));
}

/// Component count uniform in [1, 20]; weights are normalized uniform draws;
/// chi1 orders <= 30 coprime to p; chi2 angle-only with denominator <= 9 p^4;
/// lambda angle denominator <= 64.
inline FDTrace rand_fd_trace(Sampler& s, const ZpContextPtr& ctx) {
  long long count = s.int_in(1, 20);
  std::vector<double> u(static_cast<size_t>(count));
  double sum = 0.0;
  for (double& x : u) {
    x = 1.0 - s.unit_real(); // (0, 1]
    sum += x;
  }
  long long p4 = ctx->p() * ctx->p() * ctx->p() * ctx->p();
  std::vector<FDTrace::Component> comps;
  comps.reserve(static_cast<size_t>(count));
  for (long long i = 0; i < count; ++i) {
    long long n = chars::rand_coprime_order(s, ctx, 30);
    Character chi1 = chars::rand_order_n_char(s, ctx, n);
    Character chi2 = chars::rand_character(s, ctx, 9 * p4, 1);
    long long den = s.int_in(1, 64);
    BigRational theta(s.int_in(0, den - 1), den);
    comps.push_back({u[static_cast<size_t>(i)] / sum,
                     ExtremeTrace{IrrepParams(std::move(chi1), std::move(chi2), std::move(theta))}});
  }
  return FDTrace::make(std::move(comps));
}

/// Block-diagonal evaluation of a direct sum of irreducibles.
inline CMatrix direct_sum_eval(const std::vector<IrrepParams>& blocks, const GpElement& g) {
  long long total = 0;
  for (const IrrepParams& b : blocks) total += b.dim();
  CMatrix m(static_cast<int>(total));
  long long off = 0;
  for (const IrrepParams& b : blocks) {
    CMatrix blk = irrep_eval(b, g);
    for (int i = 0; i < blk.dim(); ++i)
      for (int j = 0; j < blk.dim(); ++j)
        m.at(static_cast<int>(off) + i, static_cast<int>(off) + j) = blk.at(i, j);
    off += b.dim();
  }
  return m;
}

/// Random direct sum of irreducibles with total dimension exactly `dim`
/// (block orders coprime to p; padded with 1-dimensional blocks).
inline std::vector<IrrepParams> rand_direct_sum(Sampler& s, const ZpContextPtr& ctx,
                                                long long dim, long long max_block = 9) {
  std::vector<IrrepParams> blocks;
  long long remaining = dim;
  while (remaining > 0) {
    long long cap = std::min(max_block, remaining);
    long long n = chars::rand_coprime_order(s, ctx, cap);
    blocks.push_back(rand_irrep_of_order(s, ctx, n));
    remaining -= n;
  }
  return blocks;
}

} // namespace hstab::reps
