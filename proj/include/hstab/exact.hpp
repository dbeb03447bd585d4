#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <memory>
#include <string>
#include <utility>

#include "hstab/errors.hpp"

namespace hstab::exact {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class ZpContext;
using ZpContextPtr = std::shared_ptr<const ZpContext>;

/// Per-computation parameter object carrying the prime p. All values of a
/// computation share one context; combining values over different primes
/// throws MixedContext.
class ZpContext : public std::enable_shared_from_this<ZpContext> {
public:
  static ZpContextPtr make(long long p) {
    if (p < 2 || !boost::multiprecision::miller_rabin_test(BigInt(p), 32))
      throw std::invalid_argument("ZpContext: p = " + std::to_string(p) + " is not prime");
    return ZpContextPtr(new ZpContext(p));
  }

  long long p() const { return p_; }
  const BigInt& p_big() const { return p_big_; }

  BigInt p_pow(unsigned e) const {
    return boost::multiprecision::pow(p_big_, e);
  }

private:
  explicit ZpContext(long long p) : p_(p), p_big_(p) {}

  long long p_;
  BigInt p_big_;
};

inline void check_same_prime(const ZpContextPtr& a, const ZpContextPtr& b) {
  if (a->p() != b->p())
    throw MixedContext("values over Z[1/" + std::to_string(a->p()) + "] and Z[1/" +
                       std::to_string(b->p()) + "] combined");
}

class PruferResidue;

/// Element of Z[1/p], stored as num / p^exp with exp >= 0.
///
/// Normal form (eager, so equality is structural): num == 0 implies exp == 0,
/// and exp > 0 implies p does not divide num. Integers keep exp == 0 whatever
/// their p-divisibility.
class ZpRational {
public:
  ZpRational(ZpContextPtr ctx, BigInt num, unsigned exp = 0)
      : ctx_(std::move(ctx)), num_(std::move(num)), exp_(exp) {
    normalize();
  }

  static ZpRational zero(const ZpContextPtr& ctx) { return ZpRational(ctx, 0); }
  static ZpRational one(const ZpContextPtr& ctx) { return ZpRational(ctx, 1); }
  static ZpRational integer(const ZpContextPtr& ctx, BigInt n) {
    return ZpRational(ctx, std::move(n));
  }

  /// p^k for any k in Z (negative k gives 1/p^|k|).
  static ZpRational p_power(const ZpContextPtr& ctx, long long k) {
    if (k >= 0) return ZpRational(ctx, ctx->p_pow(static_cast<unsigned>(k)));
    return ZpRational(ctx, 1, static_cast<unsigned>(-k));
  }

  /// n/d, reduced. Throws NotInRing if the reduced denominator has a prime
  /// factor other than p.
  static ZpRational from_fraction(const ZpContextPtr& ctx, BigInt n, BigInt d) {
    if (d == 0) throw std::invalid_argument("from_fraction: zero denominator");
    BigInt g = boost::multiprecision::gcd(n, d);
    if (g != 0) {
      n /= g;
      d /= g;
    }
    if (d < 0) {
      n = -n;
      d = -d;
    }
    unsigned k = 0;
    const BigInt& p = ctx->p_big();
    while (d % p == 0) {
      d /= p;
      ++k;
    }
    if (d != 1)
      throw NotInRing("denominator " + d.str() + " is not a power of " +
                      std::to_string(ctx->p()));
    return ZpRational(ctx, std::move(n), k);
  }

  const ZpContextPtr& ctx() const { return ctx_; }
  long long p() const { return ctx_->p(); }
  const BigInt& num() const { return num_; }
  unsigned exp() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp_ == 0; }

  /// p-denominator depth of the normal form (0 for integers).
  unsigned depth() const { return exp_; }

  ZpRational operator-() const { return ZpRational(ctx_, -num_, exp_); }

  friend ZpRational operator+(const ZpRational& x, const ZpRational& y) {
    check_same_prime(x.ctx_, y.ctx_);
    unsigned e = std::max(x.exp_, y.exp_);
    BigInt n = x.num_ * x.ctx_->p_pow(e - x.exp_) + y.num_ * y.ctx_->p_pow(e - y.exp_);
    return ZpRational(x.ctx_, std::move(n), e);
  }

  friend ZpRational operator-(const ZpRational& x, const ZpRational& y) { return x + (-y); }

  friend ZpRational operator*(const ZpRational& x, const ZpRational& y) {
    check_same_prime(x.ctx_, y.ctx_);
    return ZpRational(x.ctx_, x.num_ * y.num_, x.exp_ + y.exp_);
  }

  /// Scalar multiple by an integer.
  ZpRational times(const BigInt& k) const { return ZpRational(ctx_, num_ * k, exp_); }
  ZpRational times(long long k) const { return times(BigInt(k)); }

  friend bool operator==(const ZpRational& x, const ZpRational& y) {
    check_same_prime(x.ctx_, y.ctx_);
    return x.num_ == y.num_ && x.exp_ == y.exp_;
  }
  friend bool operator!=(const ZpRational& x, const ZpRational& y) { return !(x == y); }

  BigRational to_rational() const { return BigRational(num_, ctx_->p_pow(exp_)); }

  PruferResidue mod1() const;

  /// Debug form: "5", "-3/2^4", ...
  std::string str() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/" + std::to_string(ctx_->p()) + "^" + std::to_string(exp_);
  }

private:
  void normalize() {
    const BigInt& p = ctx_->p_big();
    while (exp_ > 0 && num_ != 0 && num_ % p == 0) {
      num_ /= p;
      --exp_;
    }
    if (num_ == 0) exp_ = 0;
  }

  ZpContextPtr ctx_;
  BigInt num_;
  unsigned exp_;
};

/// Element of the Prufer quotient Z[1/p]/Z: num/p^exp with 0 <= num < p^exp,
/// in lowest terms (exp > 0 implies p does not divide num; 0 is (0, 0)).
class PruferResidue {
public:
  PruferResidue(ZpContextPtr ctx, BigInt num, unsigned exp)
      : ctx_(std::move(ctx)), num_(std::move(num)), exp_(exp) {
    normalize();
  }

  static PruferResidue zero(const ZpContextPtr& ctx) { return PruferResidue(ctx, 0, 0); }

  const ZpContextPtr& ctx() const { return ctx_; }
  long long p() const { return ctx_->p(); }
  const BigInt& num() const { return num_; }
  unsigned exp() const { return exp_; }
  unsigned depth() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  friend PruferResidue operator+(const PruferResidue& x, const PruferResidue& y) {
    check_same_prime(x.ctx_, y.ctx_);
    unsigned e = std::max(x.exp_, y.exp_);
    BigInt n = x.num_ * x.ctx_->p_pow(e - x.exp_) + y.num_ * y.ctx_->p_pow(e - y.exp_);
    return PruferResidue(x.ctx_, std::move(n), e);
  }

  PruferResidue operator-() const {
    if (is_zero()) return *this;
    return PruferResidue(ctx_, ctx_->p_pow(exp_) - num_, exp_);
  }

  friend PruferResidue operator-(const PruferResidue& x, const PruferResidue& y) {
    return x + (-y);
  }

  /// Integer scalar multiple (the only multiplication the quotient carries).
  PruferResidue times(long long k) const { return PruferResidue(ctx_, num_ * k, exp_); }

  friend bool operator==(const PruferResidue& x, const PruferResidue& y) {
    check_same_prime(x.ctx_, y.ctx_);
    return x.num_ == y.num_ && x.exp_ == y.exp_;
  }
  friend bool operator!=(const PruferResidue& x, const PruferResidue& y) { return !(x == y); }

  BigRational to_rational() const { return BigRational(num_, ctx_->p_pow(exp_)); }

  std::string str() const {
    if (exp_ == 0) return "0";
    return num_.str() + "/" + std::to_string(ctx_->p()) + "^" + std::to_string(exp_);
  }

private:
  void normalize() {
    BigInt pe = ctx_->p_pow(exp_);
    num_ %= pe;
    if (num_ < 0) num_ += pe;
    const BigInt& p = ctx_->p_big();
    while (exp_ > 0 && num_ != 0 && num_ % p == 0) {
      num_ /= p;
      --exp_;
    }
    if (num_ == 0) exp_ = 0;
  }

  ZpContextPtr ctx_;
  BigInt num_;
  unsigned exp_;
};

inline PruferResidue ZpRational::mod1() const {
  return PruferResidue(ctx_, num_, exp_);
}

} // namespace hstab::exact
