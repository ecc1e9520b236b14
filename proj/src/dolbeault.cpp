#include "genformal/dolbeault.hpp"

#include <bit>

namespace genformal {

Matrix<Poly> lift_matrix(const ChartPtr& chart, const MatQ& m) {
  Matrix<Poly> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Poly(chart, m(i, j));
  return r;
}

Matrix<Poly> two_form_matrix(const PolyForm& b) {
  const ChartPtr& chart = b.chart();
  int m = chart->dim();
  Matrix<Poly> r(m, m, Poly(chart));
  for (const auto& [mask, c] : b.terms()) {
    require(form_degree(mask) == 2, ErrorKind::BadArgument,
            "expected a homogeneous 2-form");
    int i = std::countr_zero(mask);
    int j = std::countr_zero(mask & (mask - 1));
    r(i, j) += c;
    r(j, i) -= c;
  }
  return r;
}

Matrix<Poly> b_transform_matrix(const GCS& j, const PolyForm& b) {
  const ChartPtr& chart = j.chart();
  check_same_chart(chart, b.chart());
  int m = chart->dim();
  Matrix<Poly> bm = two_form_matrix(b);
  Matrix<Poly> eb = lift_matrix(chart, MatQ::identity(2 * m));
  Matrix<Poly> ebinv = eb;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      eb(m + i, k) = bm(k, i);
      ebinv(m + i, k) = -bm(k, i);
    }
  return eb * lift_matrix(chart, j.matrix()) * ebinv;
}

GenVecP b_act(const PolyForm& b, const GenVecP& s) {
  check_same_chart(b.chart(), s.chart);
  GenVecP r = s;
  PolyForm ib = iota(vector_part(s), b);
  for (const auto& [mask, c] : ib.terms()) {
    require(form_degree(mask) == 1, ErrorKind::BadArgument,
            "b-field contraction must be a one-form");
    r.cov(std::countr_zero(mask)) += c;
  }
  return r;
}

PolyForm dolbeault_del(const GCS& j, const PolyForm& a, const TwistData& tw) {
  SpinRep<GQ> rho = j.rho();
  PolyForm out(tw.chart);
  for (const auto& [k, comp] : grading_decompose(rho, j.n(), a))
    out += split_dH(rho, j.n(), GradedSection{comp, k}, tw).lower.alpha;
  return out;
}

PolyForm dolbeault_delbar(const GCS& j, const PolyForm& a, const TwistData& tw) {
  SpinRep<GQ> rho = j.rho();
  PolyForm out(tw.chart);
  for (const auto& [k, comp] : grading_decompose(rho, j.n(), a))
    out += split_dH(rho, j.n(), GradedSection{comp, k}, tw).upper.alpha;
  return out;
}

TransportReport verify_symp_transform(const PolyForm& alpha, const MatQ& omega) {
  const ChartPtr& chart = alpha.chart();
  GCS jw = from_symplectic(chart, omega);
  SpinRep<GQ> rho = jw.rho();
  int n = jw.n();
  TwistData tw = zero_twist(chart);
  PolyForm dbar_res(chart), del_res(chart);
  for (int deg = 0; deg <= chart->dim(); ++deg) {
    PolyForm a = alpha.degree_component(deg);
    if (a.is_zero()) continue;
    GradedSection s =
        make_graded(rho, n, symplectic_transport(chart, omega, a), deg - n);
    SplitSections sp = split_dH(rho, n, s, tw);
    dbar_res += sp.upper.alpha - symplectic_transport(chart, omega, d(a));
    del_res += sp.lower.alpha.scaled(GQ(mpq_class(0), mpq_class(-2))) -
               symplectic_transport(chart, omega, koszul_delta(a, omega));
  }
  return {dbar_res.is_zero() && del_res.is_zero(), dbar_res, del_res};
}

ConjugationReport verify_btransform_ops(const GCS& j, const PolyForm& b,
                                        const std::vector<GradedSection>& samples,
                                        const TwistData& tw) {
  const ChartPtr& chart = j.chart();
  check_same_chart(chart, b.chart());
  check_same_chart(chart, tw.chart);
  require(b == b.degree_component(2), ErrorKind::BadArgument,
          "b-field must be a 2-form");
  require(d(b).is_zero(), ErrorKind::NotClosed, "b-field must be closed");
  int n = j.n();
  SpinRep<Poly> rho(chart, lift_matrix(chart, j.matrix()));
  SpinRep<Poly> rho_b(chart, b_transform_matrix(j, b));
  PolyForm ebneg = wedge_exp(-b);
  for (int idx = 0; idx < (int)samples.size(); ++idx) {
    const GradedSection& s = samples[idx];
    make_graded(rho, n, s.alpha, s.k);
    GradedSection sb = make_graded(rho_b, n, ebneg.wedge(s.alpha), s.k);
    SplitSections lhs = split_dH(rho_b, n, sb, tw);
    SplitSections rhs = split_dH(rho, n, s, tw);
    PolyForm r1 = lhs.lower.alpha - ebneg.wedge(rhs.lower.alpha);
    if (!r1.is_zero()) return {false, idx, r1};
    PolyForm r2 = lhs.upper.alpha - ebneg.wedge(rhs.upper.alpha);
    if (!r2.is_zero()) return {false, idx, r2};
  }
  return {true, -1, PolyForm(chart)};
}

BigradedSection make_bigraded(const GKPair& pair, PolyForm alpha, int p, int q) {
  check_same_chart(pair.j1.chart(), alpha.chart());
  int n = pair.j1.n();
  require(-n <= p && p <= n && -n <= q && q <= n, ErrorKind::BadArgument,
          "bidegree out of range");
  SpinRep<GQ> r1 = pair.j1.rho(), r2 = pair.j2.rho();
  require(grading_projector_apply(r1, n, p,
                                  grading_projector_apply(r2, n, q, alpha)) ==
              alpha,
          ErrorKind::NotGraded, "section is not pure of the requested bidegree");
  return BigradedSection{std::move(alpha), p, q};
}

std::map<std::pair<int, int>, PolyForm> gk_four_split(const GKPair& pair,
                                                      const BigradedSection& s) {
  const ChartPtr& chart = pair.j1.chart();
  int n = pair.j1.n();
  SpinRep<GQ> r1 = pair.j1.rho(), r2 = pair.j2.rho();
  PolyForm da = d(s.alpha);
  std::map<std::pair<int, int>, PolyForm> out;
  PolyForm sum(chart);
  for (int dp : {-1, 1})
    for (int dq : {-1, 1}) {
      int p = s.p + dp, q = s.q + dq;
      PolyForm c(chart);
      if (-n <= p && p <= n && -n <= q && q <= n)
        c = grading_projector_apply(
            r1, n, p, grading_projector_apply(r2, n, q, da));
      sum += c;
      out[{p, q}] = c;
    }
  require(sum == da, ErrorKind::ResidualOutsideCorners,
          "d has a component outside the four adjacent bidegrees");
  return out;
}

}  // namespace genformal
