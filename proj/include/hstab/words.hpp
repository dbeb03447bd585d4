#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hstab/groups.hpp"

namespace hstab::words {

using exact::BigInt;
using exact::ZpContextPtr;
using exact::ZpRational;
using groups::Pattern;
using groups::UTMatrix;

enum class Family { Kp, Gtilde };

/// Generator alphabet. K_p words use {A, E12, E24, E25, E45}; Gtilde words use
/// {D2, D3} and E_ij for 1 <= i <= 3, i < j <= 5.
enum class Gen {
  A, D2, D3,
  E12, E13, E14, E15, E23, E24, E25, E34, E35, E45,
};

inline std::string gen_name(Gen g) {
  switch (g) {
    case Gen::A: return "a";
    case Gen::D2: return "d2";
    case Gen::D3: return "d3";
    case Gen::E12: return "e12";
    case Gen::E13: return "e13";
    case Gen::E14: return "e14";
    case Gen::E15: return "e15";
    case Gen::E23: return "e23";
    case Gen::E24: return "e24";
    case Gen::E25: return "e25";
    case Gen::E34: return "e34";
    case Gen::E35: return "e35";
    case Gen::E45: return "e45";
  }
  return "?";
}

inline std::optional<std::pair<int, int>> gen_slot(Gen g) {
  switch (g) {
    case Gen::E12: return {{1, 2}};
    case Gen::E13: return {{1, 3}};
    case Gen::E14: return {{1, 4}};
    case Gen::E15: return {{1, 5}};
    case Gen::E23: return {{2, 3}};
    case Gen::E24: return {{2, 4}};
    case Gen::E25: return {{2, 5}};
    case Gen::E34: return {{3, 4}};
    case Gen::E35: return {{3, 5}};
    case Gen::E45: return {{4, 5}};
    default: return std::nullopt;
  }
}

inline bool allowed_in(Gen g, Family f) {
  if (f == Family::Kp)
    return g == Gen::A || g == Gen::E12 || g == Gen::E24 || g == Gen::E25 || g == Gen::E45;
  if (g == Gen::D2 || g == Gen::D3) return true;
  auto s = gen_slot(g);
  return s && s->first <= 3; // e_ij with i <= 3, j <= 5 (excludes e45)
}

struct Letter {
  Gen gen;
  long long exp;
};

/// Word over a generator alphabet: sequence of (generator, exponent) with
/// nonzero exponents and adjacent equal generators merged.
class Word {
public:
  Word() = default;

  void push(Gen g, long long exp) {
    if (exp == 0) return;
    if (!letters_.empty() && letters_.back().gen == g) {
      letters_.back().exp += exp;
      if (letters_.back().exp == 0) letters_.pop_back();
      return;
    }
    letters_.push_back({g, exp});
  }

  void append(const Word& w) {
    for (const Letter& l : w.letters_) push(l.gen, l.exp);
  }

  Word inverse() const {
    Word r;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.push(it->gen, -it->exp);
    return r;
  }

  friend Word operator*(const Word& u, const Word& v) {
    Word r = u;
    r.append(v);
    return r;
  }

  static Word commutator(const Word& u, const Word& v) {
    return u.inverse() * v.inverse() * u * v;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (const Letter& l : letters_) {
      if (!s.empty()) s += ".";
      s += gen_name(l.gen);
      if (l.exp != 1) s += "^" + std::to_string(l.exp);
    }
    return s;
  }

private:
  std::vector<Letter> letters_;
};

/// Matrix of a single generator power. Powers are closed-form: diagonal
/// generators scale one slot by p^exp, and (1 + e_ij)^k = 1 + k e_ij.
inline UTMatrix gen_matrix(const ZpContextPtr& ctx, Family f, Gen g, long long exp) {
  if (!allowed_in(g, f)) throw std::invalid_argument("generator " + gen_name(g) + " not in family alphabet");
  Pattern pat = f == Family::Kp ? Pattern::Kp : Pattern::Gtilde;
  if (g == Gen::A || g == Gen::D2) return UTMatrix::diag_p_power(ctx, pat, 2, exp);
  if (g == Gen::D3) return UTMatrix::diag_p_power(ctx, pat, 3, exp);
  auto s = *gen_slot(g);
  return UTMatrix::elementary(ctx, pat, s.first, s.second, ZpRational::integer(ctx, exp));
}

/// Evaluation homomorphism onto the matrix group.
inline UTMatrix word_eval(const ZpContextPtr& ctx, const Word& w, Family f) {
  Pattern pat = f == Family::Kp ? Pattern::Kp : Pattern::Gtilde;
  UTMatrix r = UTMatrix::identity(ctx, pat);
  for (const Letter& l : w.letters()) r = r * gen_matrix(ctx, f, l.gen, l.exp);
  return r;
}

namespace detail {

inline Word single(Gen g, long long exp) {
  Word w;
  w.push(g, exp);
  return w;
}

/// Word evaluating to 1 + x e_ij for (i,j) in {(1,2),(2,4),(2,5)}, x = k/p^e.
/// Realized through a-conjugation of integer powers; the conjugation
/// direction depends on which side of the diagonal slot the entry touches:
///   a^e  (1+e12)^k a^-e = 1 + k/p^e e12
///   a^-e (1+e24)^k a^e  = 1 + k/p^e e24   (same for e25)
inline Word scaled_entry_word(Gen g, const ZpRational& x) {
  Word w;
  if (x.is_zero()) return w;
  long long k = x.num().convert_to<long long>();
  long long e = static_cast<long long>(x.exp());
  long long dir = (g == Gen::E12) ? 1 : -1;
  if (e != 0) w.push(Gen::A, dir * e);
  w.push(g, k);
  if (e != 0) w.push(Gen::A, -dir * e);
  return w;
}

} // namespace detail

/// Decomposition of a K_p matrix into a word over {a, e12, e24, e25, e45}:
/// peel the diagonal power of a, read the six factor coefficients off the
/// remaining unitriangular matrix, then realize the (1,4) and (1,5) entries
/// as the commutators [1 + x e12, 1 + e24] and [1 + x e14, 1 + e45].
inline Word kp_decompose(const UTMatrix& g) {
  if (g.dim() != 5 || groups::pattern_rank(groups::pattern_join(g.pattern(), Pattern::Kp)) > 3)
    throw PatternViolation("kp_decompose expects a K_p-pattern matrix");
  const ZpContextPtr& ctx = g.ctx();
  auto n = groups::as_p_power(g.at(1, 1));
  if (!n) throw PatternViolation("diagonal is not a power of p");

  Word w;
  w.push(Gen::A, *n);
  UTMatrix r = gen_matrix(ctx, Family::Kp, Gen::A, -*n) * g;

  // r = (1 + m e45)(1 + x24 e24)(1 + x25 e25)(1 + x12 e12)(1 + x14 e14)(1 + x15 e15);
  // in this order the factors do not interact, so coefficients are entries.
  long long m = r.at(3, 4).num().convert_to<long long>();
  w.push(Gen::E45, m);
  w.append(detail::scaled_entry_word(Gen::E24, r.at(1, 3)));
  w.append(detail::scaled_entry_word(Gen::E25, r.at(1, 4)));
  w.append(detail::scaled_entry_word(Gen::E12, r.at(0, 1)));
  // 1 + x e14 = [1 + x e12, 1 + e24]
  if (!r.at(0, 3).is_zero())
    w.append(Word::commutator(detail::scaled_entry_word(Gen::E12, r.at(0, 3)),
                              detail::single(Gen::E24, 1)));
  // 1 + x e15 = [1 + x e14, 1 + e45]
  if (!r.at(0, 4).is_zero()) {
    Word e14 = Word::commutator(detail::scaled_entry_word(Gen::E12, r.at(0, 4)),
                                detail::single(Gen::E24, 1));
    w.append(Word::commutator(e14, detail::single(Gen::E45, 1)));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Relation suite for the finite presentation of Gtilde (restricted to the
// m = 0 subgroup, whose generators are d2, d3 and the nine e_ij)
// ---------------------------------------------------------------------------

struct RelationResult {
  std::string name;
  bool pass;
};

struct RelationReport {
  std::vector<RelationResult> relations;
  bool all_pass = true;

  void add(std::string name, bool pass) {
    if (!pass) all_pass = false;
    relations.push_back({std::move(name), pass});
  }
};

inline std::vector<ZpRational> default_parameter_grid(const ZpContextPtr& ctx) {
  std::vector<ZpRational> g;
  g.push_back(ZpRational::zero(ctx));
  ZpRational one = ZpRational::one(ctx);
  ZpRational invp = ZpRational(ctx, 1, 1);
  ZpRational invp2 = ZpRational(ctx, 1, 2);
  ZpRational mixed = one + invp;
  for (const ZpRational& v : {one, invp, invp2, mixed}) {
    g.push_back(v);
    g.push_back(-v);
  }
  return g;
}

/// Verifies every defining relation of the presentation under the assignment
/// d2 -> diag(1,p,1,1,1), d3 -> diag(1,1,p,1,1), e_ij -> 1 + e_ij, together
/// with the parametrized commutator relations sampled over a finite grid of
/// ring elements and the coherence relation d2^-1 e23 d2 = d3 e23 d3^-1.
inline RelationReport gtilde_relation_suite(const ZpContextPtr& ctx,
                                            const std::vector<ZpRational>& grid_in = {}) {
  const std::vector<ZpRational> grid = grid_in.empty() ? default_parameter_grid(ctx) : grid_in;
  RelationReport rep;
  const long long p = ctx->p();
  const Pattern pat = Pattern::Gtilde;
  auto elem = [&](int i, int j, const ZpRational& x) {
    return UTMatrix::elementary(ctx, pat, i, j, x);
  };
  auto elem1 = [&](int i, int j) { return elem(i, j, ZpRational::one(ctx)); };
  auto epow = [&](int i, int j, long long k) {
    return elem(i, j, ZpRational::integer(ctx, k)); // (1+e_ij)^k = 1 + k e_ij
  };
  UTMatrix d2 = UTMatrix::diag_p_power(ctx, pat, 2, 1);
  UTMatrix d3 = UTMatrix::diag_p_power(ctx, pat, 3, 1);

  const std::vector<std::pair<int, int>> slots = {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3},
                                                  {2, 4}, {2, 5}, {3, 4}, {3, 5}};

  rep.add("[d2,d3] = 1", groups::commutator(d2, d3).is_identity());

  for (int j : {3, 4, 5})
    rep.add("d2 e2" + std::to_string(j) + " d2^-1 = e2" + std::to_string(j) + "^p",
            d2 * elem1(2, j) * d2.inverse() == epow(2, j, p));
  rep.add("d2^-1 e12 d2 = e12^p", d2.inverse() * elem1(1, 2) * d2 == epow(1, 2, p));
  for (auto [i, j] : slots) {
    bool listed = (i == 2 && j >= 3) || (i == 1 && j == 2);
    if (listed) continue;
    rep.add("[d2,e" + std::to_string(i) + std::to_string(j) + "] = 1",
            groups::commutator(d2, elem1(i, j)).is_identity());
  }

  for (int j : {4, 5})
    rep.add("d3 e3" + std::to_string(j) + " d3^-1 = e3" + std::to_string(j) + "^p",
            d3 * elem1(3, j) * d3.inverse() == epow(3, j, p));
  for (int i : {1, 2})
    rep.add("d3^-1 e" + std::to_string(i) + "3 d3 = e" + std::to_string(i) + "3^p",
            d3.inverse() * elem1(i, 3) * d3 == epow(i, 3, p));
  for (auto [i, j] : slots) {
    bool listed = (i == 3 && j >= 4) || (j == 3);
    if (listed) continue;
    rep.add("[d3,e" + std::to_string(i) + std::to_string(j) + "] = 1",
            groups::commutator(d3, elem1(i, j)).is_identity());
  }

  // e_ij relations, j <= k: [e_ij, e_kl] = 1 if j != k, e_il if j = k.
  for (auto [i, j] : slots)
    for (auto [k, l] : slots) {
      if (j > k) continue;
      std::string nm = "[e" + std::to_string(i) + std::to_string(j) + ",e" + std::to_string(k) +
                       std::to_string(l) + "]";
      UTMatrix c = groups::commutator(elem1(i, j), elem1(k, l));
      if (j == k)
        rep.add(nm + " = e" + std::to_string(i) + std::to_string(l), c == elem1(i, l));
      else
        rep.add(nm + " = 1", c.is_identity());
    }

  // parametrized commutators over the grid: [r e_ij, s e_kl] = rs e_il / 1
  bool param_ok = true;
  std::string param_fail;
  for (auto [i, j] : slots)
    for (auto [k, l] : slots) {
      if (j > k) continue;
      for (const ZpRational& r : grid)
        for (const ZpRational& s : grid) {
          UTMatrix c = groups::commutator(elem(i, j, r), elem(k, l, s));
          bool ok = (j == k) ? (c == elem(i, l, r * s)) : c.is_identity();
          if (!ok && param_ok) {
            param_ok = false;
            param_fail = "(" + std::to_string(i) + std::to_string(j) + "," + std::to_string(k) +
                         std::to_string(l) + ") r=" + r.str() + " s=" + s.str();
          }
        }
    }
  rep.add("parametrized [r e_ij, s e_kl] over grid" +
              (param_ok ? std::string() : " FAIL at " + param_fail),
          param_ok);

  rep.add("coherence d2^-1 e23 d2 = d3 e23 d3^-1",
          d2.inverse() * elem1(2, 3) * d2 == d3 * elem1(2, 3) * d3.inverse());
  return rep;
}

/// The universal identity [x^y,[y,z]] [y^z,[z,x]] [z^x,[x,y]] = 1 with
/// x^y = y^-1 x y and [g,h] = g^-1 h^-1 g h, evaluated exactly.
inline bool hall_witt_check(const UTMatrix& x, const UTMatrix& y, const UTMatrix& z) {
  using groups::commutator;
  using groups::conjugate;
  UTMatrix t1 = commutator(conjugate(x, y), commutator(y, z));
  UTMatrix t2 = commutator(conjugate(y, z), commutator(z, x));
  UTMatrix t3 = commutator(conjugate(z, x), commutator(x, y));
  return (t1 * t2 * t3).is_identity();
}

// ---------------------------------------------------------------------------
// Normal form in Gtilde
// ---------------------------------------------------------------------------

/// Coefficients of the ordered product
///   (r15 e15)(r25 e25)(r35 e35)(r14 e14)(r24 e24)(r34 e34)(r13 e13)(r23 e23)(r12 e12)
///   d2^n d3^m t^q
/// where r e_ij stands for 1 + r e_ij and t = 1 + e45 is the extra cyclic
/// generator of Gtilde over its m = 0 subgroup. q is stored under key (4,5).
struct GtildeNormalForm {
  std::map<std::pair<int, int>, ZpRational> coeff;
  long long d2_exp = 0;
  long long d3_exp = 0;
};

inline const std::vector<std::pair<int, int>>& normal_form_order() {
  static const std::vector<std::pair<int, int>> order = {
      {1, 5}, {2, 5}, {3, 5}, {1, 4}, {2, 4}, {3, 4}, {1, 3}, {2, 3}, {1, 2}};
  return order;
}

inline UTMatrix gtilde_assemble(const ZpContextPtr& ctx, const GtildeNormalForm& nf) {
  UTMatrix r = UTMatrix::identity(ctx, Pattern::Gtilde);
  for (auto [i, j] : normal_form_order()) {
    auto it = nf.coeff.find({i, j});
    if (it != nf.coeff.end() && !it->second.is_zero())
      r = r * UTMatrix::elementary(ctx, Pattern::Gtilde, i, j, it->second);
  }
  r = r * UTMatrix::diag_p_power(ctx, Pattern::Gtilde, 2, nf.d2_exp);
  r = r * UTMatrix::diag_p_power(ctx, Pattern::Gtilde, 3, nf.d3_exp);
  auto it = nf.coeff.find({4, 5});
  if (it != nf.coeff.end() && !it->second.is_zero())
    r = r * UTMatrix::elementary(ctx, Pattern::Gtilde, 4, 5, it->second);
  return r;
}

/// Unique coefficients reproducing g through gtilde_assemble. The cyclic part
/// is peeled off the (4,5) entry, the diagonal gives the d2/d3 exponents, and
/// the nine coefficients come out by right-to-left factor peeling (each peel
/// reads one clean entry; no earlier factor chain can reach it).
inline GtildeNormalForm gtilde_normal_form(const UTMatrix& g) {
  if (g.dim() != 5) throw PatternViolation("gtilde_normal_form expects a 5x5 matrix");
  const ZpContextPtr& ctx = g.ctx();
  GtildeNormalForm nf;

  ZpRational q = g.at(3, 4);
  nf.coeff.emplace(std::make_pair(4, 5), q);
  UTMatrix w = g * UTMatrix::elementary(ctx, Pattern::Gtilde, 4, 5, -q);

  auto n2 = groups::as_p_power(w.at(1, 1));
  auto n3 = groups::as_p_power(w.at(2, 2));
  if (!n2 || !n3) throw PatternViolation("diagonal is not a power of p");
  nf.d2_exp = *n2;
  nf.d3_exp = *n3;
  w = w * UTMatrix::diag_p_power(ctx, Pattern::Gtilde, 3, -*n3);
  w = w * UTMatrix::diag_p_power(ctx, Pattern::Gtilde, 2, -*n2);

  const auto& order = normal_form_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto [i, j] = *it;
    ZpRational r = w.at(i - 1, j - 1);
    nf.coeff.emplace(std::make_pair(i, j), r);
    if (!r.is_zero()) w = w * UTMatrix::elementary(ctx, Pattern::Gtilde, i, j, -r);
  }
  if (!w.is_identity()) throw PatternViolation("normal form peeling did not terminate at 1");
  return nf;
}

/// Random word over the family alphabet (for monoid-homomorphism checks).
inline Word rand_word(Sampler& s, Family f, int max_len) {
  static const std::vector<Gen> kp_gens = {Gen::A, Gen::E12, Gen::E24, Gen::E25, Gen::E45};
  static const std::vector<Gen> gt_gens = {Gen::D2,  Gen::D3,  Gen::E12, Gen::E13,
                                           Gen::E14, Gen::E15, Gen::E23, Gen::E24,
                                           Gen::E25, Gen::E34, Gen::E35};
  const auto& gens = f == Family::Kp ? kp_gens : gt_gens;
  Word w;
  long long len = s.int_in(0, max_len);
  for (long long i = 0; i < len; ++i) {
    Gen g = gens[static_cast<size_t>(s.int_in(0, static_cast<long long>(gens.size()) - 1))];
    long long e = s.int_in(-3, 3);
    w.push(g, e);
  }
  return w;
}

} // namespace hstab::words
