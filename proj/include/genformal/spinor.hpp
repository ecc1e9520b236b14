#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "genformal/chart.hpp"
#include "genformal/matrix.hpp"
#include "genformal/poly.hpp"

namespace genformal {

// Basis monomials of the exterior algebra over V* are bitmasks: bit k set
// means the basis covector k occurs, factors ordered by ascending index.
using FormMask = std::uint32_t;

inline int form_degree(FormMask m) { return std::popcount(m); }

// Sign of e^A wedge e^B relative to the sorted merge, A and B disjoint.
inline int wedge_sign(FormMask a, FormMask b) {
  int inversions = 0;
  FormMask bb = b;
  while (bb) {
    int k = std::countr_zero(bb);
    bb &= bb - 1;
    inversions += std::popcount(a >> (k + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

// Sign of pulling covector k out of the front of e^mask (k must be in mask).
inline int contract_sign(FormMask mask, int k) {
  return (std::popcount(mask & ((FormMask(1) << k) - 1)) & 1) ? -1 : 1;
}

// Reversal (transpose) sign on degree d: +1 for d = 0,1 mod 4, else -1.
inline int reversal_sign(int d) { return (d % 4 <= 1) ? 1 : -1; }

// Mixed coefficient products: form coefficients may be Poly while operator
// entries stay GQ.
inline GQ coeff_mul(const GQ& a, const GQ& b) { return a * b; }
inline Poly coeff_mul(const Poly& a, const GQ& b) { return a * b; }
inline Poly coeff_mul(const Poly& a, const Poly& b) { return a * b; }

// The multiplicative unit of a coefficient ring, bound to a chart.
template <class R>
R ring_one(const ChartPtr& chart);
template <>
inline GQ ring_one<GQ>(const ChartPtr&) { return GQ(1); }
template <>
inline Poly ring_one<Poly>(const ChartPtr& chart) { return Poly(chart, GQ(1)); }

// Sparse element of the full exterior algebra Lambda V* (complexified) with
// coefficients in R (GQ for constants, Poly for varying forms).
template <class R>
class FormVector {
 public:
  FormVector() = default;
  explicit FormVector(ChartPtr chart) : chart_(std::move(chart)) {}
  FormVector(ChartPtr chart, const R& scalar) : chart_(std::move(chart)) {
    add_term(0, scalar);
  }
  static FormVector basis(const ChartPtr& chart, FormMask mask, const R& c) {
    FormVector f(chart);
    f.add_term(mask, c);
    return f;
  }

  const ChartPtr& chart() const { return chart_; }
  const std::map<FormMask, R>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(FormMask mask, const R& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(mask, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FormVector operator-() const {
    FormVector r(chart_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  FormVector operator+(const FormVector& o) const {
    check_same_chart(chart_, o.chart_);
    FormVector r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  FormVector operator-(const FormVector& o) const {
    check_same_chart(chart_, o.chart_);
    FormVector r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
  }
  FormVector& operator+=(const FormVector& o) { *this = *this + o; return *this; }
  FormVector& operator-=(const FormVector& o) { *this = *this - o; return *this; }
  bool operator==(const FormVector& o) const { return terms_ == o.terms_; }
  bool operator!=(const FormVector& o) const { return !(*this == o); }

  template <class S>
  FormVector scaled(const S& c) const {
    FormVector r(chart_);
    for (const auto& [m, x] : terms_) r.add_term(m, coeff_mul(x, c));
    return r;
  }

  FormVector wedge(const FormVector& o) const {
    check_same_chart(chart_, o.chart_);
    FormVector r(chart_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        if (ma & mb) continue;
        R c = ca * cb;
        if (wedge_sign(ma, mb) < 0) c = -c;
        r.add_term(ma | mb, c);
      }
    return r;
  }

  // Wedge by the basis covector k from the left.
  FormVector wedge_basis(int k) const {
    FormVector r(chart_);
    FormMask bit = FormMask(1) << k;
    for (const auto& [m, c] : terms_) {
      if (m & bit) continue;
      r.add_term(m | bit, contract_sign(m | bit, k) < 0 ? -c : c);
    }
    return r;
  }

  // Contraction with the basis vector k.
  FormVector contract_basis(int k) const {
    FormVector r(chart_);
    FormMask bit = FormMask(1) << k;
    for (const auto& [m, c] : terms_) {
      if (!(m & bit)) continue;
      r.add_term(m & ~bit, contract_sign(m, k) < 0 ? -c : c);
    }
    return r;
  }

  FormVector degree_component(int d) const {
    FormVector r(chart_);
    for (const auto& [m, c] : terms_)
      if (form_degree(m) == d) r.terms_[m] = c;
    return r;
  }
  int max_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, form_degree(m));
    return d;
  }

  // Complex conjugation: conjugate coefficients and swap dz <-> dzb factors
  // (with the permutation sign from re-sorting the indices).
  FormVector conj() const {
    FormVector r(chart_);
    for (const auto& [m, c] : terms_) {
      FormMask cm = 0;
      int sign = 1;
      FormMask mm = m;
      // Build the conjugated product left to right, tracking the sign of
      // appending each conjugated factor after the already-sorted prefix.
      while (mm) {
        int k = std::countr_zero(mm);
        mm &= mm - 1;
        int ck = chart_->conj_var(k);
        FormMask bit = FormMask(1) << ck;
        sign *= wedge_sign(cm, bit);
        cm |= bit;
      }
      R cc = conj_coeff(c);
      r.add_term(cm, sign < 0 ? R(-cc) : cc);
    }
    return r;
  }

  static GQ conj_coeff(const GQ& c) { return c.conj(); }
  static Poly conj_coeff(const Poly& c) { return c.conj(); }

  std::vector<R> to_coords() const {
    std::vector<R> v(std::size_t(1) << chart_->dim(), R(0));
    for (const auto& [m, c] : terms_) v[m] = c;
    return v;
  }
  static FormVector from_coords(const ChartPtr& chart, const std::vector<R>& v) {
    FormVector f(chart);
    for (FormMask m = 0; m < v.size(); ++m) f.add_term(m, v[m]);
    return f;
  }

 private:
  ChartPtr chart_;
  std::map<FormMask, R> terms_;
};

using FormQ = FormVector<GQ>;
using PolyForm = FormVector<Poly>;

inline PolyForm lift(const FormQ& f, const ChartPtr& chart) {
  PolyForm r(chart);
  for (const auto& [m, c] : f.terms()) r.add_term(m, Poly(chart, c));
  return r;
}

inline FormQ eval_form(const PolyForm& f, const Point& p) {
  FormQ r(f.chart());
  for (const auto& [m, c] : f.terms()) r.add_term(m, c.eval(p));
  return r;
}

// Element of V + V*: components 0..m-1 are the vector part in the basis
// e_0..e_{m-1}, components m..2m-1 the covector part in e^0..e^{m-1}.
template <class R>
struct GenVec {
  ChartPtr chart;
  std::vector<R> comps;

  GenVec() = default;
  explicit GenVec(ChartPtr c) : chart(std::move(c)), comps(2 * chart->dim(), R(0)) {}
  static GenVec basis_vector(const ChartPtr& c, int k, const R& coeff) {
    GenVec v(c);
    v.comps[k] = coeff;
    return v;
  }
  static GenVec basis_covector(const ChartPtr& c, int k, const R& coeff) {
    GenVec v(c);
    v.comps[c->dim() + k] = coeff;
    return v;
  }

  int m() const { return chart->dim(); }
  const R& vec(int k) const { return comps[k]; }
  const R& cov(int k) const { return comps[m() + k]; }
  R& vec(int k) { return comps[k]; }
  R& cov(int k) { return comps[m() + k]; }
  bool is_zero() const {
    for (const auto& c : comps)
      if (!c.is_zero()) return false;
    return true;
  }

  GenVec operator+(const GenVec& o) const {
    check_same_chart(chart, o.chart);
    GenVec r(chart);
    for (size_t k = 0; k < comps.size(); ++k) r.comps[k] = comps[k] + o.comps[k];
    return r;
  }
  GenVec operator-(const GenVec& o) const {
    check_same_chart(chart, o.chart);
    GenVec r(chart);
    for (size_t k = 0; k < comps.size(); ++k) r.comps[k] = comps[k] - o.comps[k];
    return r;
  }
  GenVec operator-() const {
    GenVec r(chart);
    for (size_t k = 0; k < comps.size(); ++k) r.comps[k] = -comps[k];
    return r;
  }
  template <class S>
  GenVec scaled(const S& c) const {
    GenVec r(chart);
    for (size_t k = 0; k < comps.size(); ++k) r.comps[k] = coeff_mul(comps[k], c);
    return r;
  }
  bool operator==(const GenVec& o) const { return comps == o.comps; }

  GenVec conj() const {
    GenVec r(chart);
    for (int k = 0; k < m(); ++k) {
      r.comps[chart->conj_var(k)] = FormVector<R>::conj_coeff(comps[k]);
      r.comps[m() + chart->conj_var(k)] =
          FormVector<R>::conj_coeff(comps[m() + k]);
    }
    return r;
  }
};

using GenVecQ = GenVec<GQ>;
using GenVecP = GenVec<Poly>;

inline GenVecP lift(const GenVecQ& v, const ChartPtr& chart) {
  GenVecP r(chart);
  for (size_t k = 0; k < v.comps.size(); ++k) r.comps[k] = Poly(chart, v.comps[k]);
  return r;
}

inline GenVecQ eval_genvec(const GenVecP& v, const Point& p) {
  GenVecQ r(v.chart);
  for (size_t k = 0; k < v.comps.size(); ++k) r.comps[k] = v.comps[k].eval(p);
  return r;
}

// <X+a, Y+b> = (b(X) + a(Y)) / 2. Note pairing(v, v) = xi(X) exactly.
template <class R>
R pairing(const GenVec<R>& v, const GenVec<R>& w) {
  check_same_chart(v.chart, w.chart);
  R s(0);
  int m = v.m();
  for (int k = 0; k < m; ++k) {
    s += v.vec(k) * w.cov(k);
    s += v.cov(k) * w.vec(k);
  }
  return s * GQ::of(1, 2);
}

// Clifford action (X + xi) . alpha = iota_X alpha + xi wedge alpha.
// The induced relation is v.(v.alpha) = pairing(v,v) alpha: with the
// half-normalized pairing the Clifford constant is 1 (frozen by test).
template <class R>
FormVector<R> clifford(const GenVec<R>& v, const FormVector<R>& alpha) {
  check_same_chart(v.chart, alpha.chart());
  FormVector<R> r(alpha.chart());
  int m = v.m();
  for (int k = 0; k < m; ++k) {
    if (!v.vec(k).is_zero()) r += alpha.contract_basis(k).scaled(v.vec(k));
    if (!v.cov(k).is_zero()) r += alpha.wedge_basis(k).scaled(v.cov(k));
  }
  return r;
}

// The spin representation of so(V + V*). A skew M = [[A, P], [B, -A^T]]
// (A endomorphism, P bivector map V* -> V, B two-form map V -> V*) lifts
// through so = Lambda^2(V + V*) inside the Clifford algebra to
//   rho(M) = sum A_ij iota_i (e^j ^ .) + sum_{i<j} P_ij iota_i iota_j
//          + sum_{i<j} B_ij e^i ^ e^j ^ .  -  tr(A)/2.
// This normalization gives the derivation identity
//   rho(M)(v.a) = (Mv).a + v.rho(M)(a)
// and on eigen-operators the grading conventions used throughout.
template <class RM>
class SpinRep {
 public:
  SpinRep(ChartPtr chart, const Matrix<RM>& m) : chart_(std::move(chart)) {
    int n = chart_->dim();
    require(m.rows() == 2 * n && m.cols() == 2 * n,
            ErrorKind::NonconformableShapes, "operator must be 2m x 2m");
    a_ = m.block(0, 0, n, n);
    p_ = m.block(0, n, n, n);
    b_ = m.block(n, 0, n, n);
    Matrix<RM> d = m.block(n, n, n, n);
    require((p_ + p_.transpose()).is_zero(), ErrorKind::NotSkew,
            "top-right block is not a bivector");
    require((b_ + b_.transpose()).is_zero(), ErrorKind::NotSkew,
            "bottom-left block is not a two-form");
    require((d + a_.transpose()).is_zero(), ErrorKind::NotSkew,
            "bottom-right block must be minus the transpose of the top-left");
    half_trace_ = RM(0);
    for (int k = 0; k < n; ++k) half_trace_ += a_(k, k);
    half_trace_ = half_trace_ * GQ::of(1, 2);
  }

  const ChartPtr& chart() const { return chart_; }

  template <class RF>
  FormVector<RF> apply(const FormVector<RF>& alpha) const {
    check_same_chart(chart_, alpha.chart());
    FormVector<RF> out(chart_);
    int n = chart_->dim();
    for (const auto& [mask, c] : alpha.terms()) {
      // endomorphism part: A_ij iota_i (e^j ^ .)
      for (int j = 0; j < n; ++j) {
        FormMask jb = FormMask(1) << j;
        if (mask & jb) continue;
        FormMask mj = mask | jb;
        int s1 = contract_sign(mj, j);
        for (int i = 0; i < n; ++i) {
          if (a_(i, j).is_zero()) continue;
          FormMask ib = FormMask(1) << i;
          if (!(mj & ib)) continue;
          int s = s1 * contract_sign(mj, i);
          RF t = coeff_mul(c, a_(i, j));
          out.add_term(mj & ~ib, s < 0 ? RF(-t) : t);
        }
      }
      // bivector part: P_ij iota_i iota_j  (i < j)
      for (int i = 0; i < n; ++i) {
        FormMask ib = FormMask(1) << i;
        if (!(mask & ib)) continue;
        for (int j = i + 1; j < n; ++j) {
          FormMask jb = FormMask(1) << j;
          if (!(mask & jb) || p_(i, j).is_zero()) continue;
          int s = contract_sign(mask, j) * contract_sign(mask & ~jb, i);
          RF t = coeff_mul(c, p_(i, j));
          out.add_term(mask & ~ib & ~jb, s < 0 ? RF(-t) : t);
        }
      }
      // two-form part: B_ij e^i ^ e^j ^ .  (i < j)
      for (int i = 0; i < n; ++i) {
        FormMask ib = FormMask(1) << i;
        if (mask & ib) continue;
        for (int j = i + 1; j < n; ++j) {
          FormMask jb = FormMask(1) << j;
          if ((mask & jb) || b_(i, j).is_zero()) continue;
          FormMask mj = mask | jb;
          int s = contract_sign(mj, j) * contract_sign(mj | ib, i);
          RF t = coeff_mul(c, b_(i, j));
          out.add_term(mj | ib, s < 0 ? RF(-t) : t);
        }
      }
      if (!half_trace_.is_zero())
        out.add_term(mask, RF(-coeff_mul(c, half_trace_)));
    }
    return out;
  }

 private:
  ChartPtr chart_;
  Matrix<RM> a_, p_, b_;
  RM half_trace_;
};

template <class RM>
SpinRep<RM> spin_rep(const ChartPtr& chart, const Matrix<RM>& m) {
  return SpinRep<RM>(chart, m);
}

// 2^m x 2^m matrix of an operator on spinors, columns indexed by basis masks.
MatQ materialize_spinor_op(const ChartPtr& chart, const SpinRep<GQ>& op);

// Exact eigenspace (kernel of op - lambda) of a spinor-space operator,
// columns echelonized for reproducibility.
MatQ spinor_eigenspace(const MatQ& op, const GQ& lambda);

// U^k for the operator rho(J): the -k*sqrt(-1) eigenvalue.
inline GQ grading_eigenvalue(int k) { return GQ(mpq_class(0), mpq_class(-k)); }

// Lagrange interpolation projector onto U^k for rho(J) with spectrum
// {-n i, ..., n i}: the product of (rho - lambda_j)/(lambda_k - lambda_j)
// over j != k. Divisions are by nonzero constants only, so this is exact for
// polynomial coefficients as well.
template <class RM, class RF>
FormVector<RF> grading_projector_apply(const SpinRep<RM>& rho, int n, int k,
                                       const FormVector<RF>& alpha) {
  FormVector<RF> f = alpha;
  for (int j = -n; j <= n; ++j) {
    if (j == k) continue;
    GQ denom = (grading_eigenvalue(k) - grading_eigenvalue(j)).inv();
    f = (rho.apply(f) - f.scaled(grading_eigenvalue(j))).scaled(denom);
  }
  return f;
}

// All graded components at once; their sum is the input identically.
template <class RM, class RF>
std::map<int, FormVector<RF>> grading_decompose(const SpinRep<RM>& rho, int n,
                                                const FormVector<RF>& alpha) {
  std::map<int, FormVector<RF>> out;
  FormVector<RF> sum(alpha.chart());
  for (int k = -n; k <= n; ++k) {
    FormVector<RF> comp = grading_projector_apply(rho, n, k, alpha);
    sum += comp;
    if (!comp.is_zero()) out[k] = comp;
  }
  require(sum == alpha, ErrorKind::NotGraded,
          "grading projectors do not resolve the identity on this input");
  return out;
}

// Mukai pairing: the top-degree coefficient of rev(alpha) ^ beta, where rev
// reverses wedge order (sign (-1)^{d(d-1)/2} on degree d).
template <class R>
R mukai_pairing(const FormVector<R>& alpha, const FormVector<R>& beta) {
  check_same_chart(alpha.chart(), beta.chart());
  FormMask full = (FormMask(1) << alpha.chart()->dim()) - 1;
  R out(0);
  for (const auto& [ma, ca] : alpha.terms()) {
    FormMask mb = full & ~ma;
    auto it = beta.terms().find(mb);
    if (it == beta.terms().end()) continue;
    int s = reversal_sign(form_degree(ma)) * wedge_sign(ma, mb);
    R t = ca * it->second;
    out += (s < 0) ? R(-t) : t;
  }
  return out;
}

// The 2-form sum B_ij e^i ^ e^j (i < j) of a skew matrix, and the inverse
// reading. Coefficient type follows the matrix.
template <class R>
FormVector<R> two_form_of(const ChartPtr& chart, const Matrix<R>& b) {
  require(b.rows() == chart->dim() && b.cols() == chart->dim(),
          ErrorKind::NonconformableShapes, "two-form matrix must be m x m");
  require((b + b.transpose()).is_zero(), ErrorKind::NotSkew,
          "two-form matrix must be skew");
  FormVector<R> f(chart);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = i + 1; j < b.cols(); ++j)
      f.add_term((FormMask(1) << i) | (FormMask(1) << j), b(i, j));
  return f;
}

// exp of wedging by a form with no scalar part (nilpotent, so the series is
// finite and exact: divisions are by integers only).
template <class R>
FormVector<R> wedge_exp(const FormVector<R>& b) {
  require(b.terms().find(0) == b.terms().end(), ErrorKind::BadArgument,
          "wedge exponential needs a form without scalar part");
  FormVector<R> acc(b.chart(), ring_one<R>(b.chart())), term = acc;
  for (int k = 1; k <= b.chart()->dim(); ++k) {
    term = term.wedge(b).scaled(GQ::of(1, k));
    if (term.is_zero()) break;
    acc += term;
  }
  return acc;
}

// Coefficient-ring conversion of a constant form (GQ -> GQ or GQ -> Poly).
template <class RF>
FormVector<RF> convert_form(const ChartPtr& chart, const FormQ& f) {
  FormVector<RF> r(chart);
  for (const auto& [mask, c] : f.terms())
    r.add_term(mask, coeff_mul(ring_one<RF>(chart), c));
  return r;
}

// Contraction with the bivector sum g_ij e_i ^ e_j (i < j):
// iota = sum g_ij iota_j . iota_i.
template <class RF>
FormVector<RF> bivector_contract(const MatQ& g, const FormVector<RF>& alpha) {
  require(g.rows() == alpha.chart()->dim() && g.cols() == g.rows(),
          ErrorKind::NonconformableShapes, "bivector matrix must be m x m");
  require((g + g.transpose()).is_zero(), ErrorKind::NotSkew,
          "bivector matrix must be skew");
  FormVector<RF> out(alpha.chart());
  for (int i = 0; i < g.rows(); ++i)
    for (int j = i + 1; j < g.cols(); ++j) {
      if (g(i, j).is_zero()) continue;
      out += alpha.contract_basis(i).contract_basis(j).scaled(g(i, j));
    }
  return out;
}

// The symplectic spinor transport e^{i omega} ^ e^{iota_Lambda / 2i} alpha
// with Lambda the Poisson bivector of omega (matrix W^{-1}); it carries
// plain degree-k forms onto the (k - n)-th symplectic grading piece.
template <class RF>
FormVector<RF> symplectic_transport(const ChartPtr& chart, const MatQ& w,
                                    const FormVector<RF>& alpha) {
  MatQ g = inverse(w);
  FormVector<RF> acc = alpha, term = alpha;
  GQ half_i_inv = (GQ(2) * GQ::i()).inv();
  for (int k = 1; 2 * k <= chart->dim(); ++k) {
    term = bivector_contract(g, term).scaled(half_i_inv * GQ::of(1, k));
    if (term.is_zero()) break;
    acc += term;
  }
  FormVector<RF> eio =
      wedge_exp(convert_form<RF>(chart, two_form_of(chart, w).scaled(GQ::i())));
  return eio.wedge(acc);
}

std::string to_string(const FormQ& f);
std::string to_string(const PolyForm& f);
std::string to_string(const GenVecQ& v);
std::string to_string(const GenVecP& v);

}  // namespace genformal
