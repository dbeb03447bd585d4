#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hstab/exact.hpp"
#include "hstab/rng.hpp"

namespace hstab::groups {

using exact::BigInt;
using exact::PruferResidue;
using exact::ZpContextPtr;
using exact::ZpRational;

// ---------------------------------------------------------------------------
// G_p = Z[1/p]^2 x| Z, alpha = [[1,1],[0,1]]
// ---------------------------------------------------------------------------

/// Element (a, b, c) of G_p with the product
/// (a1,b1,c1)(a2,b2,c2) = (a1 + a2 + c1*b2, b1 + b2, c1 + c2).
struct GpElement {
  ZpRational a;
  ZpRational b;
  long long c;

  static GpElement identity(const ZpContextPtr& ctx) {
    return {ZpRational::zero(ctx), ZpRational::zero(ctx), 0};
  }

  const ZpContextPtr& ctx() const { return a.ctx(); }

  friend GpElement operator*(const GpElement& g, const GpElement& h) {
    return {g.a + h.a + h.b.times(g.c), g.b + h.b, g.c + h.c};
  }

  GpElement inverse() const { return {b.times(c) - a, -b, -c}; }

  bool is_identity() const { return a.is_zero() && b.is_zero() && c == 0; }

  friend bool operator==(const GpElement& g, const GpElement& h) {
    return g.a == h.a && g.b == h.b && g.c == h.c;
  }
  friend bool operator!=(const GpElement& g, const GpElement& h) { return !(g == h); }

  std::string str() const { return "(" + a.str() + "," + b.str() + "," + std::to_string(c) + ")"; }
};

/// alpha^c applied to (a, b): (a + c*b, b).
inline std::pair<ZpRational, ZpRational> alpha_pow(const std::pair<ZpRational, ZpRational>& v,
                                                   long long c) {
  return {v.first + v.second.times(c), v.second};
}

/// Membership in H_p = <(1,0,0),(0,1,0)> = Z^2 x {0}.
inline bool in_Hp(const GpElement& g) {
  return g.a.is_integer() && g.b.is_integer() && g.c == 0;
}

// ---------------------------------------------------------------------------
// Upper-triangular matrix groups over Z[1/p]
// ---------------------------------------------------------------------------

/// Subgroup patterns a matrix can claim. The 5x5 chain is ordered by
/// inclusion HK < GK < N < Kp < Gtilde; Heis3 is the 3x3 Heisenberg variant.
enum class Pattern { Heis3, HK, GK, N, Kp, Gtilde };

inline int pattern_dim(Pattern p) { return p == Pattern::Heis3 ? 3 : 5; }

inline const char* pattern_name(Pattern p) {
  switch (p) {
    case Pattern::Heis3: return "Heis3";
    case Pattern::HK: return "HK";
    case Pattern::GK: return "GK";
    case Pattern::N: return "N";
    case Pattern::Kp: return "Kp";
    case Pattern::Gtilde: return "Gtilde";
  }
  return "?";
}

inline int pattern_rank(Pattern p) {
  switch (p) {
    case Pattern::HK: return 0;
    case Pattern::GK: return 1;
    case Pattern::N: return 2;
    case Pattern::Kp: return 3;
    case Pattern::Gtilde: return 4;
    case Pattern::Heis3: return -1;
  }
  return -1;
}

inline Pattern pattern_join(Pattern x, Pattern y) {
  if (x == y) return x;
  if (x == Pattern::Heis3 || y == Pattern::Heis3)
    throw PatternViolation("cannot mix Heis3 with 5x5 patterns");
  return pattern_rank(x) >= pattern_rank(y) ? x : y;
}

/// Value of a ZpRational that is exactly p^k: returns k, or nullopt.
inline std::optional<long long> as_p_power(const ZpRational& x) {
  if (x.num() <= 0) return std::nullopt;
  if (x.exp() > 0) {
    if (x.num() == 1) return -static_cast<long long>(x.exp());
    return std::nullopt;
  }
  BigInt n = x.num();
  const BigInt& p = x.ctx()->p_big();
  long long k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return n == 1 ? std::optional<long long>(k) : std::nullopt;
}

/// Exact upper-triangular matrix over Z[1/p] claiming one of the subgroup
/// patterns. Multiplication and inversion stay exact and re-validate the
/// claimed pattern (a violation signals a bug: all patterns are subgroups).
class UTMatrix {
public:
  static UTMatrix identity(const ZpContextPtr& ctx, Pattern pat) {
    int n = pattern_dim(pat);
    std::vector<ZpRational> e(static_cast<size_t>(n) * n, ZpRational::zero(ctx));
    for (int i = 0; i < n; ++i) e[static_cast<size_t>(i) * n + i] = ZpRational::one(ctx);
    return UTMatrix(ctx, pat, std::move(e));
  }

  static UTMatrix from_entries(const ZpContextPtr& ctx, Pattern pat,
                               std::vector<ZpRational> entries) {
    return UTMatrix(ctx, pat, std::move(entries));
  }

  /// 1 + x * e_ij (1-based indices, i < j).
  static UTMatrix elementary(const ZpContextPtr& ctx, Pattern pat, int i, int j,
                             const ZpRational& x) {
    UTMatrix m = identity(ctx, pat);
    m.e_[m.idx(i - 1, j - 1)] = x;
    m.validate();
    return m;
  }

  /// Diagonal matrix with p^k in (slot,slot), 1 elsewhere (1-based slot).
  static UTMatrix diag_p_power(const ZpContextPtr& ctx, Pattern pat, int slot, long long k) {
    UTMatrix m = identity(ctx, pat);
    m.e_[m.idx(slot - 1, slot - 1)] = ZpRational::p_power(ctx, k);
    m.validate();
    return m;
  }

  int dim() const { return dim_; }
  Pattern pattern() const { return pat_; }
  const ZpContextPtr& ctx() const { return ctx_; }

  /// 0-based access.
  const ZpRational& at(int i, int j) const { return e_[idx(i, j)]; }

  friend UTMatrix operator*(const UTMatrix& x, const UTMatrix& y) {
    exact::check_same_prime(x.ctx_, y.ctx_);
    if (x.dim_ != y.dim_) throw PatternViolation("dimension mismatch");
    Pattern pat = pattern_join(x.pat_, y.pat_);
    int n = x.dim_;
    std::vector<ZpRational> e(static_cast<size_t>(n) * n, ZpRational::zero(x.ctx_));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const ZpRational& xik = x.at(i, k);
        if (xik.is_zero()) continue;
        for (int j = k; j < n; ++j) {
          const ZpRational& ykj = y.at(k, j);
          if (ykj.is_zero()) continue;
          e[static_cast<size_t>(i) * n + j] = e[static_cast<size_t>(i) * n + j] + xik * ykj;
        }
      }
    return UTMatrix(x.ctx_, pat, std::move(e));
  }

  /// Exact inverse by back-substitution (diagonal entries are powers of p,
  /// hence units in Z[1/p]).
  UTMatrix inverse() const {
    int n = dim_;
    std::vector<ZpRational> x(static_cast<size_t>(n) * n, ZpRational::zero(ctx_));
    for (int j = n - 1; j >= 0; --j) {
      for (int i = j; i >= 0; --i) {
        auto k = as_p_power(at(i, i));
        if (!k) throw PatternViolation("diagonal entry is not a power of p");
        ZpRational s = (i == j) ? ZpRational::one(ctx_) : ZpRational::zero(ctx_);
        for (int t = i + 1; t <= j; ++t) s = s - at(i, t) * x[static_cast<size_t>(t) * n + j];
        x[static_cast<size_t>(i) * n + j] = s * ZpRational::p_power(ctx_, -*k);
      }
    }
    return UTMatrix(ctx_, pat_, std::move(x));
  }

  bool is_identity() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        if (i == j && at(i, j) != ZpRational::one(ctx_)) return false;
        if (i != j && !at(i, j).is_zero()) return false;
      }
    return true;
  }

  /// Equality is mathematical (same dimension and entries); the claimed
  /// pattern is a view, not part of the value.
  friend bool operator==(const UTMatrix& x, const UTMatrix& y) {
    if (x.dim_ != y.dim_) return false;
    for (size_t t = 0; t < x.e_.size(); ++t)
      if (x.e_[t] != y.e_[t]) return false;
    return true;
  }
  friend bool operator!=(const UTMatrix& x, const UTMatrix& y) { return !(x == y); }

  /// Reinterpret with a weaker (larger) pattern in the 5x5 chain.
  UTMatrix as_pattern(Pattern pat) const {
    if (pattern_join(pat_, pat) != pat) throw PatternViolation("not a widening");
    UTMatrix m(*this);
    m.pat_ = pat;
    m.validate();
    return m;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < dim_; ++i) {
      s += (i ? "; " : "");
      for (int j = 0; j < dim_; ++j) s += (j ? "," : "") + at(i, j).str();
    }
    return s + "]";
  }

private:
  UTMatrix(ZpContextPtr ctx, Pattern pat, std::vector<ZpRational> e)
      : ctx_(std::move(ctx)), pat_(pat), dim_(pattern_dim(pat)), e_(std::move(e)) {
    if (e_.size() != static_cast<size_t>(dim_) * dim_)
      throw PatternViolation("entry count does not match pattern dimension");
    validate();
  }

  size_t idx(int i, int j) const { return static_cast<size_t>(i) * dim_ + j; }

  bool one_at(int i) const { return at(i, i) == ZpRational::one(ctx_); }

  void validate() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < i; ++j)
        if (!at(i, j).is_zero()) throw PatternViolation("below-diagonal entry");
    if (pat_ == Pattern::Heis3) {
      for (int i = 0; i < 3; ++i)
        if (!one_at(i)) throw PatternViolation("Heis3 diagonal");
      return;
    }
    // 5x5 chain. Diagonal: (1, p^n, p^k, 1, 1) at the top of the chain.
    if (!one_at(0) || !one_at(3) || !one_at(4)) throw PatternViolation("diagonal");
    if (!as_p_power(at(1, 1))) throw PatternViolation("(2,2) not a power of p");
    if (!as_p_power(at(2, 2))) throw PatternViolation("(3,3) not a power of p");
    if (!at(3, 4).is_integer()) throw PatternViolation("(4,5) not an integer");
    const int r = pattern_rank(pat_);
    if (r <= 3) { // Kp and below
      if (!one_at(2)) throw PatternViolation("(3,3) must be 1");
      if (!at(0, 2).is_zero() || !at(1, 2).is_zero() || !at(2, 3).is_zero() ||
          !at(2, 4).is_zero())
        throw PatternViolation("third row/column must vanish");
    }
    if (r <= 2 && !one_at(1)) throw PatternViolation("(2,2) must be 1"); // N and below
    if (r <= 1) {                                                        // GK and below
      if (!at(0, 1).is_zero() || !at(1, 3).is_zero() || !at(1, 4).is_zero())
        throw PatternViolation("GK entries (1,2),(2,4),(2,5) must vanish");
    }
    if (r == 0) { // HK
      if (!at(3, 4).is_zero()) throw PatternViolation("HK requires m = 0");
      if (!at(0, 3).is_integer() || !at(0, 4).is_integer())
        throw PatternViolation("HK requires integral (1,4),(1,5)");
    }
  }

  ZpContextPtr ctx_;
  Pattern pat_;
  int dim_;
  std::vector<ZpRational> e_;
};

inline UTMatrix commutator(const UTMatrix& g, const UTMatrix& h) {
  return g.inverse() * h.inverse() * g * h;
}

inline UTMatrix conjugate(const UTMatrix& x, const UTMatrix& y) { // x^y = y^-1 x y
  return y.inverse() * x * y;
}

/// The diagonal generator a = diag(1, p, 1, 1, 1) of K_p.
inline UTMatrix kp_gen_a(const ZpContextPtr& ctx) {
  return UTMatrix::diag_p_power(ctx, Pattern::Kp, 2, 1);
}

/// Heisenberg embedding (a,b,c) -> [[1, b, a-bc], [0, 1, -c], [0, 0, 1]].
inline UTMatrix heis_embed(const GpElement& g) {
  const ZpContextPtr& ctx = g.ctx();
  ZpRational zero = ZpRational::zero(ctx), one = ZpRational::one(ctx);
  std::vector<ZpRational> e = {one,  g.b,  g.a - g.b.times(g.c),
                               zero, one,  ZpRational::integer(ctx, -g.c),
                               zero, zero, one};
  return UTMatrix::from_entries(ctx, Pattern::Heis3, std::move(e));
}

/// Isomorphism of G_p onto G_K <= K_p: x14 = -b, x15 = bc - a, m = -c.
/// The formula is pinned by the multiplicativity oracle in the test suite.
inline UTMatrix gk_embed(const GpElement& g) {
  const ZpContextPtr& ctx = g.ctx();
  std::vector<ZpRational> e;
  e.reserve(25);
  ZpRational zero = ZpRational::zero(ctx), one = ZpRational::one(ctx);
  ZpRational x14 = -g.b;
  ZpRational x15 = g.b.times(g.c) - g.a;
  ZpRational x45 = ZpRational::integer(ctx, -g.c);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j)
        e.push_back(one);
      else if (i == 0 && j == 3)
        e.push_back(x14);
      else if (i == 0 && j == 4)
        e.push_back(x15);
      else if (i == 3 && j == 4)
        e.push_back(x45);
      else
        e.push_back(zero);
    }
  return UTMatrix::from_entries(ctx, Pattern::GK, std::move(e));
}

/// Membership of a 5x5 matrix in H_K (m = 0, x14, x15 integral, rest trivial).
inline bool in_HK(const UTMatrix& g) {
  if (g.dim() != 5) return false;
  const ZpContextPtr& ctx = g.ctx();
  ZpRational one = ZpRational::one(ctx);
  for (int i = 0; i < 5; ++i)
    if (g.at(i, i) != one) return false;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      bool allowed = (i == 0 && (j == 3 || j == 4));
      if (!allowed && !g.at(i, j).is_zero()) return false;
    }
  return g.at(0, 3).is_integer() && g.at(0, 4).is_integer();
}

/// Membership in the center of K_p, {1 + x e15 : x in Z[1/p]}.
inline bool in_Kp_center(const UTMatrix& g) {
  if (g.dim() != 5) return false;
  const ZpContextPtr& ctx = g.ctx();
  ZpRational one = ZpRational::one(ctx);
  for (int i = 0; i < 5; ++i)
    if (g.at(i, i) != one) return false;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (!(i == 0 && j == 4) && !g.at(i, j).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Q_p = (Z[1/p]/Z)^2 x| Z, the quotient of G_p by H_p
// ---------------------------------------------------------------------------

struct QpElement {
  PruferResidue abar;
  PruferResidue bbar;
  long long c;

  static QpElement identity(const ZpContextPtr& ctx) {
    return {PruferResidue::zero(ctx), PruferResidue::zero(ctx), 0};
  }

  friend QpElement operator*(const QpElement& g, const QpElement& h) {
    return {g.abar + h.abar + h.bbar.times(g.c), g.bbar + h.bbar, g.c + h.c};
  }

  QpElement inverse() const { return {bbar.times(c) - abar, -bbar, -c}; }

  bool is_identity() const { return abar.is_zero() && bbar.is_zero() && c == 0; }

  friend bool operator==(const QpElement& g, const QpElement& h) {
    return g.abar == h.abar && g.bbar == h.bbar && g.c == h.c;
  }
  friend bool operator!=(const QpElement& g, const QpElement& h) { return !(g == h); }
};

/// Quotient map G_p -> Q_p.
inline QpElement qp_of(const GpElement& g) { return {g.a.mod1(), g.b.mod1(), g.c}; }

// ---------------------------------------------------------------------------
// Random elements (deterministic; see rng.hpp for the generator contract)
// ---------------------------------------------------------------------------

/// num uniform in [-2^16, 2^16], exp uniform in [0, 6].
inline ZpRational rand_zq(Sampler& s, const ZpContextPtr& ctx) {
  BigInt num(s.int_in(-65536, 65536));
  unsigned e = static_cast<unsigned>(s.int_in(0, 6));
  return ZpRational(ctx, std::move(num), e);
}

/// c uniform in [-8, 8].
inline GpElement rand_gp(Sampler& s, const ZpContextPtr& ctx) {
  ZpRational a = rand_zq(s, ctx);
  ZpRational b = rand_zq(s, ctx);
  return {std::move(a), std::move(b), s.int_in(-8, 8)};
}

inline QpElement rand_qp(Sampler& s, const ZpContextPtr& ctx) {
  PruferResidue a = rand_zq(s, ctx).mod1();
  PruferResidue b = rand_zq(s, ctx).mod1();
  return {std::move(a), std::move(b), s.int_in(-8, 8)};
}

namespace detail {
inline UTMatrix build_kp_like(const ZpContextPtr& ctx, Pattern pat, long long n2, long long n3,
                              const std::vector<std::pair<std::pair<int, int>, ZpRational>>& ents) {
  std::vector<ZpRational> e;
  e.reserve(25);
  ZpRational zero = ZpRational::zero(ctx), one = ZpRational::one(ctx);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j && i == 1)
        e.push_back(ZpRational::p_power(ctx, n2));
      else if (i == j && i == 2)
        e.push_back(ZpRational::p_power(ctx, n3));
      else if (i == j)
        e.push_back(one);
      else {
        ZpRational v = zero;
        for (const auto& [ij, x] : ents)
          if (ij.first == i + 1 && ij.second == j + 1) v = x;
        e.push_back(v);
      }
    }
  return UTMatrix::from_entries(ctx, pat, std::move(e));
}
} // namespace detail

/// Diagonal exponent in [-4, 4], m in [-8, 8], off-diagonal entries rand_zq.
inline UTMatrix rand_kp(Sampler& s, const ZpContextPtr& ctx) {
  long long n = s.int_in(-4, 4);
  ZpRational x12 = rand_zq(s, ctx), x14 = rand_zq(s, ctx), x15 = rand_zq(s, ctx);
  ZpRational x24 = rand_zq(s, ctx), x25 = rand_zq(s, ctx);
  ZpRational m = ZpRational::integer(ctx, s.int_in(-8, 8));
  return detail::build_kp_like(ctx, Pattern::Kp, n, 0,
                               {{{1, 2}, x12}, {{1, 4}, x14}, {{1, 5}, x15},
                                {{2, 4}, x24}, {{2, 5}, x25}, {{4, 5}, m}});
}

inline UTMatrix rand_n_of_kp(Sampler& s, const ZpContextPtr& ctx) {
  ZpRational x12 = rand_zq(s, ctx), x14 = rand_zq(s, ctx), x15 = rand_zq(s, ctx);
  ZpRational x24 = rand_zq(s, ctx), x25 = rand_zq(s, ctx);
  ZpRational m = ZpRational::integer(ctx, s.int_in(-8, 8));
  return detail::build_kp_like(ctx, Pattern::N, 0, 0,
                               {{{1, 2}, x12}, {{1, 4}, x14}, {{1, 5}, x15},
                                {{2, 4}, x24}, {{2, 5}, x25}, {{4, 5}, m}});
}

inline UTMatrix rand_hk(Sampler& s, const ZpContextPtr& ctx) {
  ZpRational x14 = ZpRational::integer(ctx, s.int_in(-65536, 65536));
  ZpRational x15 = ZpRational::integer(ctx, s.int_in(-65536, 65536));
  return detail::build_kp_like(ctx, Pattern::HK, 0, 0, {{{1, 4}, x14}, {{1, 5}, x15}});
}

inline UTMatrix rand_gtilde(Sampler& s, const ZpContextPtr& ctx) {
  long long n = s.int_in(-4, 4), k = s.int_in(-4, 4);
  std::vector<std::pair<std::pair<int, int>, ZpRational>> ents;
  for (auto [i, j] : std::array<std::pair<int, int>, 9>{{{1, 2}, {1, 3}, {1, 4}, {1, 5},
                                                         {2, 3}, {2, 4}, {2, 5}, {3, 4},
                                                         {3, 5}}})
    ents.push_back({{i, j}, rand_zq(s, ctx)});
  ents.push_back({{4, 5}, ZpRational::integer(ctx, s.int_in(-8, 8))});
  return detail::build_kp_like(ctx, Pattern::Gtilde, n, k, ents);
}

// ---------------------------------------------------------------------------
// Structure reports
// ---------------------------------------------------------------------------

enum class NilpotencyFamily { Gp, NOfKp };

struct NilpotencyReport {
  NilpotencyFamily family;
  long long trials = 0;
  bool deep_commutators_trivial = false; // class <= claimed
  bool witness_found = false;            // class >= claimed
  int claimed_class = 0;
  std::string witness; // textual witness payload
  std::string counterexample;

  bool class_exact() const { return deep_commutators_trivial && witness_found; }
};

/// Samples commutators to certify nilpotency class exactly 2 for G_p and
/// exactly 3 for N <= K_p. Throws WitnessNotFound when no non-trivial deep
/// commutator shows up in `trials` samples.
inline NilpotencyReport nilpotency_witness(const ZpContextPtr& ctx, NilpotencyFamily family,
                                           long long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("nilpotency_witness: trials >= 1 required");
  Sampler s(seed);
  NilpotencyReport rep;
  rep.family = family;
  rep.trials = trials;
  rep.claimed_class = family == NilpotencyFamily::Gp ? 2 : 3;
  rep.deep_commutators_trivial = true;
  if (family == NilpotencyFamily::Gp) {
    for (long long t = 0; t < trials; ++t) {
      GpElement g = rand_gp(s, ctx), h = rand_gp(s, ctx), k = rand_gp(s, ctx);
      GpElement c2 = g.inverse() * h.inverse() * g * h;
      GpElement c3 = c2.inverse() * k.inverse() * c2 * k;
      if (!c3.is_identity()) {
        rep.deep_commutators_trivial = false;
        rep.counterexample = g.str() + " " + h.str() + " " + k.str();
        break;
      }
      if (!c2.is_identity() && !rep.witness_found) {
        rep.witness_found = true;
        rep.witness = "[" + g.str() + "," + h.str() + "] != 1";
      }
    }
  } else {
    for (long long t = 0; t < trials; ++t) {
      UTMatrix g = rand_n_of_kp(s, ctx), h = rand_n_of_kp(s, ctx);
      UTMatrix k = rand_n_of_kp(s, ctx), l = rand_n_of_kp(s, ctx);
      UTMatrix c2 = commutator(g, h);
      UTMatrix c3 = commutator(c2, k);
      UTMatrix c4 = commutator(c3, l);
      if (!c4.is_identity()) {
        rep.deep_commutators_trivial = false;
        rep.counterexample = g.str() + " " + h.str() + " " + k.str() + " " + l.str();
        break;
      }
      if (!c3.is_identity() && !rep.witness_found) {
        rep.witness_found = true;
        rep.witness = "[[g,h],k] != 1 at trial " + std::to_string(t);
      }
    }
  }
  if (rep.deep_commutators_trivial && !rep.witness_found)
    throw WitnessNotFound("no non-trivial deep commutator in sample; retry with a new seed");
  return rep;
}

struct KpStructureReport {
  long long trials = 0;
  bool hk_normal = true;
  bool center_commutes = true;
  bool noncentral_detected = true;
  std::string counterexample;

  bool pass() const { return hk_normal && center_commutes && noncentral_detected; }
};

/// Normality of H_K in K_p and the description of the center of K_p as
/// {1 + x e15}, checked on random samples.
inline KpStructureReport kp_structure_checks(const ZpContextPtr& ctx, long long trials,
                                             std::uint64_t seed) {
  Sampler s(seed);
  KpStructureReport rep;
  rep.trials = trials;
  std::vector<UTMatrix> gens;
  gens.push_back(kp_gen_a(ctx));
  ZpRational one = ZpRational::one(ctx);
  for (auto [i, j] : std::array<std::pair<int, int>, 4>{{{1, 2}, {2, 4}, {2, 5}, {4, 5}}})
    gens.push_back(UTMatrix::elementary(ctx, Pattern::Kp, i, j, one));

  for (long long t = 0; t < trials; ++t) {
    UTMatrix k = rand_kp(s, ctx);
    UTMatrix h = rand_hk(s, ctx);
    UTMatrix conj = k * h * k.inverse();
    if (!in_HK(conj)) {
      rep.hk_normal = false;
      rep.counterexample = "k=" + k.str() + " h=" + h.str();
      break;
    }
    UTMatrix z = UTMatrix::elementary(ctx, Pattern::Kp, 1, 5, rand_zq(s, ctx));
    if (!(z * k == k * z)) {
      rep.center_commutes = false;
      rep.counterexample = "z=" + z.str() + " k=" + k.str();
      break;
    }
    if (!in_Kp_center(k)) {
      bool fails_some_generator = false;
      for (const UTMatrix& g : gens)
        if (!(g * k == k * g)) {
          fails_some_generator = true;
          break;
        }
      if (!fails_some_generator) {
        rep.noncentral_detected = false;
        rep.counterexample = "k=" + k.str() + " commutes with all generators";
        break;
      }
    }
  }
  return rep;
}

} // namespace hstab::groups
