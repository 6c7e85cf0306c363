#pragma once

#include "sixv/domain.hpp"
#include "sixv/perm.hpp"
#include "sixv/point.hpp"
#include "sixv/poly.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixv {

/*
  Sparse Hecke algebra elements: a finitely supported map  permutation -> R.

  The algebra has basis {T_w} with T_u T_w = T_{uw} when lengths add and
  (T_k + q)(T_k - 1) = 0.  For R_k(p) := p T_k + (1 - p), the quadratic
  relation yields the multiplication rules

      T_pi * R_k(p) = p  T_{pi s_k} + (1 -  p) T_pi   if len goes up,
                      qp T_{pi s_k} + (1 - qp) T_pi   if len goes down,

  and the mirror rules for R_k(p) * T_pi with s_k pi in place of pi s_k.
  The length branch is decided in O(n) from one-line notation (ascents),
  never by recounting inversions.

  The coefficient ring R is exact: rationals for evaluation at points, and
  integer polynomials in q for the T + (q-1) products of the R-polynomial
  route.  Zero coefficients are pruned on merge.
*/
template <class R>
class HeckeElem {
public:
  using Terms = std::map<Perm, R>;

  HeckeElem() = default;
  static HeckeElem unit(int n) {
    HeckeElem e;
    e.terms_[Perm::identity(n)] = R(1);
    return e;
  }
  static HeckeElem basis(const Perm& w) {
    HeckeElem e;
    e.terms_[w] = R(1);
    return e;
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  R coeff(const Perm& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? R(0) : it->second;
  }

  void add(const Perm& p, const R& c) {
    if (c == R(0)) return;
    auto [it, inserted] = terms_.emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second == R(0)) terms_.erase(it);
    }
  }

  R coeff_sum() const {
    R s(0);
    for (const auto& [p, c] : terms_) s += c;
    return s;
  }

  bool operator==(const HeckeElem& o) const { return terms_ == o.terms_; }
  bool operator!=(const HeckeElem& o) const { return terms_ != o.terms_; }

private:
  Terms terms_;
};

template <class R>
HeckeElem<R> mul_right_R(const HeckeElem<R>& y, int k, const R& p, const R& q) {
  HeckeElem<R> out;
  const R one(1);
  for (const auto& [pi, c] : y.terms()) {
    if (pi.right_ascent(k)) {
      out.add(pi.times_s(k), c * p);
      out.add(pi, c * (one - p));
    } else {
      R qp = q * p;
      out.add(pi.times_s(k), c * qp);
      out.add(pi, c * (one - qp));
    }
  }
  return out;
}

template <class R>
HeckeElem<R> mul_left_R(int k, const R& p, const HeckeElem<R>& y, const R& q) {
  HeckeElem<R> out;
  const R one(1);
  for (const auto& [pi, c] : y.terms()) {
    if (pi.left_ascent(k)) {
      out.add(pi.s_times(k), c * p);
      out.add(pi, c * (one - p));
    } else {
      R qp = q * p;
      out.add(pi.s_times(k), c * qp);
      out.add(pi, c * (one - qp));
    }
  }
  return out;
}

// y * (T_k + c): the workhorse of the R-polynomial computation, where with
// c = q - 1 a length drop collapses to q T_{pi s_k}.
template <class R>
HeckeElem<R> mul_right_T_plus(const HeckeElem<R>& y, int k, const R& c, const R& q) {
  HeckeElem<R> out;
  const R one(1);
  for (const auto& [pi, coef] : y.terms()) {
    if (pi.right_ascent(k)) {
      out.add(pi.times_s(k), coef);
      out.add(pi, coef * c);
    } else {
      out.add(pi.times_s(k), coef * q);
      out.add(pi, coef * (one - q + c));
    }
  }
  return out;
}

// y * T_sigma and T_sigma * y along a reduced word (T_k = R_k(1)).
template <class R>
HeckeElem<R> mul_right_T(const HeckeElem<R>& y, const Perm& sigma, const R& q) {
  HeckeElem<R> out = y;
  for (int k : reduced_word(sigma)) out = mul_right_R(out, k, R(1), q);
  return out;
}

template <class R>
HeckeElem<R> mul_left_T(const Perm& sigma, const HeckeElem<R>& y, const R& q) {
  HeckeElem<R> out = y;
  Word w = reduced_word(sigma);
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = mul_left_R(*it, R(1), out, q);
  return out;
}

// T_sigma R_{i_1}(p_1) ... R_{i_r}(p_r) expanded in the T basis; by the
// equivalence with the vertex model its coefficients are the probabilities of
// the outgoing color permutations.
template <class R>
HeckeElem<R> yb_element(const Word& word, const std::vector<R>& params, const Perm& sigma,
                        const R& q) {
  if (word.size() != params.size()) throw std::invalid_argument("word/params length mismatch");
  check_word(word, sigma.n());
  HeckeElem<R> y = HeckeElem<R>::basis(sigma);
  for (std::size_t t = 0; t < word.size(); ++t) y = mul_right_R(y, word[t], params[t], q);
  return y;
}

/*
  Yang-Baxter basis element Y^w at an evaluation point, built along a reduced
  word via Y^{w s_k} = Y^w R_k(p_{w^{-1}(k), w^{-1}(k+1)}).  The Yang-Baxter
  relation makes the result independent of the chosen word.
*/
inline HeckeElem<Rat> yang_baxter_basis(const Perm& w, const EvalPoint& pt) {
  if (w.n() != static_cast<int>(pt.z.size()))
    throw std::invalid_argument("point size does not match permutation");
  HeckeElem<Rat> y = HeckeElem<Rat>::unit(w.n());
  Perm prefix = Perm::identity(w.n());
  for (int k : reduced_word(w)) {
    Perm inv = prefix.inverse();
    y = mul_right_R(y, k, p_param(pt, inv(k), inv(k + 1)), pt.q);
    prefix = prefix.times_s(k);
  }
  return y;
}

// All p-parameters equal, as in the q^{-len} R-polynomial specialization.
template <class R>
HeckeElem<R> yb_element_const(const Perm& w, const R& p, const R& q) {
  HeckeElem<R> y = HeckeElem<R>::unit(w.n());
  for (int k : reduced_word(w)) y = mul_right_R(y, k, p, q);
  return y;
}

// Sum of coefficients over permutations satisfying both boundary conditions
// at cutoff levels (ci, cj).
template <class R>
R boundary_projection(const HeckeElem<R>& y, int ci, int cj, const BoundaryCondition& h,
                      const BoundaryCondition& v) {
  R s(0);
  for (const auto& [pi, c] : y.terms())
    if (boundary_h(pi, ci, cj) == h && boundary_v(pi, ci, cj) == v) s += c;
  return s;
}

// Admissible generator window for the star anti-automorphism at (ci, cj).
inline std::pair<int, int> star_window(int n, int ci, int cj) {
  return {std::max(1, ci + cj + 1 - n), std::min(n, ci + cj)};
}

/*
  The involutive anti-automorphism T_{k_1}...T_{k_r} -> T_{s-k_r}...T_{s-k_1}
  with s = ci+cj.  On basis elements it acts as pi -> rho pi^{-1} rho where
  rho reverses the window [k_min, k_max]; every support permutation must fix
  the complement of the window.
*/
template <class R>
HeckeElem<R> star_antiauto(const HeckeElem<R>& y, int ci, int cj) {
  if (y.empty()) return y;
  int n = y.terms().begin()->first.n();
  auto [kmin, kmax] = star_window(n, ci, cj);
  Perm rho = rev_perm(kmin, kmax, n);
  HeckeElem<R> out;
  for (const auto& [pi, c] : y.terms()) {
    for (int t = 1; t <= n; ++t)
      if ((t < kmin || t > kmax) && pi(t) != t)
        throw std::domain_error("star_antiauto: support leaves the admissible window");
    out.add(rho * pi.inverse() * rho, c);
  }
  return out;
}

// The anti-automorphism T_pi -> T_{pi^{-1}}: color-position symmetry.
template <class R>
HeckeElem<R> cps_transform(const HeckeElem<R>& y) {
  HeckeElem<R> out;
  for (const auto& [pi, c] : y.terms()) out.add(pi.inverse(), c);
  return out;
}

// Variant conjugated by the longest element: T_pi -> T_{w0 pi^{-1} w0}.
template <class R>
HeckeElem<R> cps_transform_w0(const HeckeElem<R>& y, int n) {
  Perm w0 = rev_perm(1, n, n);
  HeckeElem<R> out;
  for (const auto& [pi, c] : y.terms()) out.add(w0 * pi.inverse() * w0, c);
  return out;
}

// Debug dump, one term per line: "pi=one-line; coeff=num/den".
inline std::string dump(const HeckeElem<Rat>& y) {
  std::string s;
  for (const auto& [pi, c] : y.terms()) {
    s += "pi=" + pi.to_string() + "; coeff=" + rat_to_string(c) + "\n";
  }
  return s;
}

} // namespace sixv
