#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "genformal/polyforms.hpp"

namespace genformal {

// A polyform certified pure of one grading level: the Lagrange projector at
// level k fixes alpha. The zero form is pure of every level.
struct GradedSection {
  PolyForm alpha;
  int k;
};

template <class RM>
GradedSection make_graded(const SpinRep<RM>& rho, int n, PolyForm alpha, int k) {
  require(-n <= k && k <= n, ErrorKind::BadArgument,
          "grading level out of range");
  require(grading_projector_apply(rho, n, k, alpha) == alpha,
          ErrorKind::NotGraded, "section is not pure of the requested level");
  return GradedSection{std::move(alpha), k};
}

// The two adjacent-level components of d_H on a level-k section:
//   lower = P_{k-1} d_H alpha  (the del side),
//   upper = P_{k+1} d_H alpha  (the delbar side).
struct SplitSections {
  GradedSection lower, upper;
};

// Splits d_H alpha through the grading projectors. A nonzero component
// outside the two adjacent levels raises ResidualOutsideAdjacentDegrees;
// for an integrable structure this never happens, so the error doubles as
// a non-integrability detector. Polynomial-entry operators are supported:
// the projectors divide by constant eigenvalue gaps only.
template <class RM>
SplitSections split_dH(const SpinRep<RM>& rho, int n, const GradedSection& s,
                       const TwistData& tw) {
  PolyForm w = d_twisted(s.alpha, tw);
  PolyForm lower(tw.chart), upper(tw.chart);
  for (const auto& [level, comp] : grading_decompose(rho, n, w)) {
    if (level == s.k - 1) {
      lower = comp;
    } else if (level == s.k + 1) {
      upper = comp;
    } else {
      fail(ErrorKind::ResidualOutsideAdjacentDegrees,
           "d_H has a component at level " + std::to_string(level) +
               " from level " + std::to_string(s.k));
    }
  }
  return {GradedSection{std::move(lower), s.k - 1},
          GradedSection{std::move(upper), s.k + 1}};
}

inline SplitSections split_dH(const GCS& j, const GradedSection& s,
                              const TwistData& tw) {
  return split_dH(j.rho(), j.n(), s, tw);
}

// The two halves of d_H on an arbitrary polyform, summed over its graded
// components; on an integrable structure del + delbar = d_H.
PolyForm dolbeault_del(const GCS& j, const PolyForm& a, const TwistData& tw);
PolyForm dolbeault_delbar(const GCS& j, const PolyForm& a, const TwistData& tw);

// Constant matrix lifted to polynomial entries.
Matrix<Poly> lift_matrix(const ChartPtr& chart, const MatQ& m);
// The skew matrix B_ij of a polynomial 2-form.
Matrix<Poly> two_form_matrix(const PolyForm& b);
// e^B J e^{-B} with polynomial entries. For a non-closed b the result is a
// genuinely non-integrable almost structure (a useful negative control).
Matrix<Poly> b_transform_matrix(const GCS& j, const PolyForm& b);
// e^B on sections: X + xi -> X + xi + iota_X b.
GenVecP b_act(const PolyForm& b, const GenVecP& s);

// Checks the symplectic transport intertwiners
//   delbar(T alpha) = T(d alpha)  and  -2i del(T alpha) = T(delta alpha)
// with T = e^{i omega} e^{Lambda/2i}, degree component by degree component.
struct TransportReport {
  bool pass;
  PolyForm dbar_residual;  // delbar(T a) - T(d a)
  PolyForm del_residual;   // -2i del(T a) - T(delta a)
};
TransportReport verify_symp_transform(const PolyForm& alpha, const MatQ& omega);

// Checks the conjugation identities del_B = e^{-B} del e^B and
// delbar_B = e^{-B} delbar e^B on graded samples, where the _B operators
// split d_H through the transformed structure e^B J e^{-B}. b must be
// closed (polynomial allowed). failed_sample is -1 when every sample holds.
struct ConjugationReport {
  bool pass;
  int failed_sample;
  PolyForm residual;
};
ConjugationReport verify_btransform_ops(const GCS& j, const PolyForm& b,
                                        const std::vector<GradedSection>& samples,
                                        const TwistData& tw);

// A section certified pure of joint bidegree (p, q) for a pair of commuting
// structures.
struct BigradedSection {
  PolyForm alpha;
  int p, q;
};
BigradedSection make_bigraded(const GKPair& pair, PolyForm alpha, int p, int q);

// Splits d(s) into the four corner components at (p +- 1, q +- 1); all four
// keys are present, zero components included. A residual outside the
// corners raises ResidualOutsideCorners.
std::map<std::pair<int, int>, PolyForm> gk_four_split(const GKPair& pair,
                                                      const BigradedSection& s);

}  // namespace genformal
