#pragma once

#include <complex>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hstab/exact.hpp"
#include "hstab/rng.hpp"

namespace hstab::chars {

using exact::BigInt;
using exact::BigRational;
using exact::ZpContextPtr;
using exact::ZpRational;

/// Multiplicative inverse of a mod m (gcd(a, m) = 1), via extended Euclid.
inline long long inverse_mod(long long a, long long m) {
  if (m == 1) return 0;
  long long r0 = m, r1 = ((a % m) + m) % m, t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  if (r0 != 1) throw DomainError("inverse_mod: arguments not coprime");
  return ((t0 % m) + m) % m;
}

/// Computable character of Z[1/p]: a rational angle part times a finite-order
/// torsion part,
///   chi(x) = exp(2 pi i (q x + j rho_m(x) / m)),   gcd(m, p) = 1,
/// where rho_m(k / p^e) = k (p^-1 mod m)^e mod m. rho_m is well defined on
/// Z[1/p] because multiplying k by p and raising e by one cancels mod m.
class Character {
public:
  Character(ZpContextPtr ctx, BigRational q, long long m, long long j)
      : ctx_(std::move(ctx)), q_(std::move(q)), m_(m), j_(j) {
    if (m_ < 1) throw InvalidOrder("torsion modulus must be >= 1");
    if (m_ % ctx_->p() == 0) throw InvalidOrder("torsion order divisible by p");
    canonicalize();
  }

  static Character trivial(const ZpContextPtr& ctx) { return Character(ctx, 0, 1, 0); }
  static Character torsion(const ZpContextPtr& ctx, long long m, long long j) {
    return Character(ctx, 0, m, j);
  }
  static Character angle(const ZpContextPtr& ctx, BigRational q) {
    return Character(ctx, std::move(q), 1, 0);
  }

  const ZpContextPtr& ctx() const { return ctx_; }
  const BigRational& q() const { return q_; }
  long long torsion_m() const { return m_; }
  long long torsion_j() const { return j_; }

  bool is_trivial() const { return q_ == 0 && j_ == 0; }

  /// rho_m on a raw (num, exp) pair; exposed so tests can probe
  /// representation independence with unnormalized inputs.
  static long long rho(const ZpContextPtr& ctx, const BigInt& num, unsigned exp, long long m) {
    if (m == 1) return 0;
    long long n = static_cast<long long>(num % m);
    if (n < 0) n += m;
    long long pinv = inverse_mod(ctx->p() % m, m);
    long long acc = n % m;
    for (unsigned i = 0; i < exp; ++i) acc = static_cast<long long>((__int128)acc * pinv % m);
    return acc;
  }

  /// Exact phase of chi(x) as a rational number of turns (not reduced mod 1).
  BigRational phase(const ZpRational& x) const {
    exact::check_same_prime(ctx_, x.ctx());
    BigRational ph = q_ * x.to_rational();
    if (j_ != 0) ph += BigRational(j_ * rho(ctx_, x.num(), x.exp(), m_), m_);
    return ph;
  }

  std::complex<double> eval(const ZpRational& x) const { return unit(phase(x)); }

  /// exp(2 pi i t) for an exact rational number t of turns, reduced mod 1
  /// before the single trigonometric call.
  static std::complex<double> unit(const BigRational& t) {
    BigInt n = boost::multiprecision::numerator(t);
    BigInt d = boost::multiprecision::denominator(t);
    BigInt r = n % d;
    if (r < 0) r += d;
    double frac = BigRational(r, d).convert_to<double>();
    double ang = 2.0 * std::numbers::pi * frac;
    return {std::cos(ang), std::sin(ang)};
  }

  /// Order as a character of Z[1/p]: finite iff the angle part vanishes.
  std::optional<long long> order() const {
    if (q_ != 0) return std::nullopt;
    return j_ == 0 ? 1 : m_; // canonical form has gcd(j, m) = 1
  }

  friend Character operator*(const Character& x, const Character& y) {
    exact::check_same_prime(x.ctx_, y.ctx_);
    long long m = std::lcm(x.m_, y.m_);
    long long j = ((x.j_ * (m / x.m_)) % m + (y.j_ * (m / y.m_)) % m) % m;
    return Character(x.ctx_, x.q_ + y.q_, m, j);
  }

  friend bool operator==(const Character& x, const Character& y) {
    exact::check_same_prime(x.ctx_, y.ctx_);
    return x.q_ == y.q_ && x.m_ == y.m_ && x.j_ == y.j_;
  }
  friend bool operator!=(const Character& x, const Character& y) { return !(x == y); }

  std::string str() const {
    return "chi(q=" + q_.str() + ",m=" + std::to_string(m_) + ",j=" + std::to_string(j_) + ")";
  }

private:
  void canonicalize() {
    j_ %= m_;
    if (j_ < 0) j_ += m_;
    if (j_ == 0) {
      m_ = 1;
      return;
    }
    long long g = std::gcd(j_, m_);
    j_ /= g;
    m_ /= g;
  }

  ZpContextPtr ctx_;
  BigRational q_;
  long long m_;
  long long j_;
};

/// The phi(n) characters of exact order n (torsion only). Throws InvalidOrder
/// when p divides n: no character of Z[1/p] has such an order.
inline std::vector<Character> enumerate_order_n_chars(const ZpContextPtr& ctx, long long n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (n % ctx->p() == 0)
    throw InvalidOrder("no character of Z[1/p] has order divisible by p (requested " +
                       std::to_string(n) + ")");
  std::vector<Character> out;
  if (n == 1) {
    out.push_back(Character::trivial(ctx));
    return out;
  }
  for (long long j = 1; j < n; ++j)
    if (std::gcd(j, n) == 1) out.push_back(Character::torsion(ctx, n, j));
  return out;
}

/// Point of the dual of Z[1/p]^2, restricted to pairs where chi1 has finite
/// order (the only points that can be periodic under the dual action).
struct DualPoint {
  Character chi1;
  Character chi2;

  DualPoint(Character c1, Character c2) : chi1(std::move(c1)), chi2(std::move(c2)) {
    if (chi1.q() != 0) throw std::invalid_argument("chi1 must have finite order (zero angle)");
  }
};

/// One step of the dual action: since (chi o alpha)(a,b) = chi1(a) (chi1 chi2)(b),
/// the dual automorphism sends (chi1, chi2) to (chi1, chi1 * chi2).
inline DualPoint dual_alpha(const DualPoint& pt) { return DualPoint(pt.chi1, pt.chi1 * pt.chi2); }

inline std::complex<double> dual_eval(const DualPoint& pt, const ZpRational& a,
                                      const ZpRational& b) {
  return Character::unit(pt.chi1.phase(a) + pt.chi2.phase(b));
}

/// Probe pairs used to compare dual points by evaluation:
/// (1,0), (0,1), (1/p^e, 0), (0, 1/p^e) for e <= 6.
inline std::vector<std::pair<ZpRational, ZpRational>> dual_probe_set(const ZpContextPtr& ctx) {
  std::vector<std::pair<ZpRational, ZpRational>> probes;
  ZpRational zero = ZpRational::zero(ctx);
  probes.push_back({ZpRational::one(ctx), zero});
  probes.push_back({zero, ZpRational::one(ctx)});
  for (unsigned e = 1; e <= 6; ++e) {
    probes.push_back({ZpRational(ctx, 1, e), zero});
    probes.push_back({zero, ZpRational(ctx, 1, e)});
  }
  return probes;
}

/// Exact period test: true iff chi1 has order m (and p does not divide m).
/// Cross-validated by iterating dual_alpha and comparing evaluations on the
/// probe set; a disagreement would indicate an arithmetic bug.
inline bool is_periodic_point(const DualPoint& pt, long long m) {
  if (m < 1) throw std::invalid_argument("period must be >= 1");
  const ZpContextPtr& ctx = pt.chi1.ctx();
  bool structural = (m % ctx->p() != 0) && pt.chi1.order() == std::optional<long long>(m);

  if (m <= 64) { // keep the cross-check cheap for large probes
    auto probes = dual_probe_set(ctx);
    DualPoint cur = pt;
    bool fixed_before_m = false;
    for (long long k = 1; k <= m; ++k) {
      cur = dual_alpha(cur);
      bool all_equal = true;
      for (const auto& [a, b] : probes)
        if (std::abs(dual_eval(cur, a, b) - dual_eval(pt, a, b)) > 1e-12) {
          all_equal = false;
          break;
        }
      if (all_equal && k < m) fixed_before_m = true;
      if (k == m && structural != (all_equal && !fixed_before_m))
        throw Error("is_periodic_point: structural and evaluation routes disagree");
    }
  }
  return structural;
}

/// Orbit size of a dual point under dual_alpha (equals the order of chi1).
inline long long dual_orbit_size(const DualPoint& pt, long long cap = 1 << 20) {
  DualPoint cur = dual_alpha(pt);
  long long n = 1;
  while (!(cur.chi2 == pt.chi2)) {
    cur = dual_alpha(cur);
    if (++n > cap) throw Error("dual_orbit_size: cap exceeded");
  }
  return n;
}

// ---------------------------------------------------------------------------
// Random characters (documented sampler; see rng.hpp for generator contract)
// ---------------------------------------------------------------------------

/// Torsion order drawn uniformly from {1 <= n <= max_order : gcd(n, p) = 1}.
inline long long rand_coprime_order(Sampler& s, const ZpContextPtr& ctx, long long max_order) {
  while (true) {
    long long n = s.int_in(1, max_order);
    if (n % ctx->p() != 0) return n;
  }
}

/// Angle num/den with den uniform in [1, max_den], num uniform in [0, den-1];
/// optional torsion of order <= max_torsion coprime to p (j uniform coprime).
inline Character rand_character(Sampler& s, const ZpContextPtr& ctx, long long max_den,
                                long long max_torsion) {
  long long den = s.int_in(1, max_den);
  long long num = s.int_in(0, den - 1);
  long long m = max_torsion >= 2 ? rand_coprime_order(s, ctx, max_torsion) : 1;
  long long j = 0;
  if (m > 1) {
    do {
      j = s.int_in(1, m - 1);
    } while (std::gcd(j, m) != 1);
  }
  return Character(ctx, BigRational(num, den), m, j);
}

/// chi1 of exact order n (uniform primitive j), chi2 unrestricted.
inline Character rand_order_n_char(Sampler& s, const ZpContextPtr& ctx, long long n) {
  if (n == 1) return Character::trivial(ctx);
  long long j;
  do {
    j = s.int_in(1, n - 1);
  } while (std::gcd(j, n) != 1);
  return Character::torsion(ctx, n, j);
}

} // namespace hstab::chars
