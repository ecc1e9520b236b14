#pragma once

#include <map>
#include <utility>
#include <vector>

#include "genformal/gcs.hpp"
#include "genformal/spinor.hpp"

namespace genformal {

// Exterior derivative: the Wirtinger differentials of each coefficient,
// wedged from the left. On complex charts this is the sum of the dz and dzb
// halves, so d = partial + partialbar.
PolyForm d(const PolyForm& alpha);
// Contraction by a polynomial vector field (covector block must vanish).
PolyForm iota(const GenVecP& x, const PolyForm& alpha);
// Lie derivative along a polynomial vector field, implemented by the product
// rule on coefficients and covector factors -- not via Cartan's formula, so
// L_X = d iota_X + iota_X d remains a genuine cross-check.
PolyForm lie(const GenVecP& x, const PolyForm& alpha);

// The covector block as a one-form, and back.
PolyForm covector_form(const GenVecP& v);
GenVecP vector_part(const GenVecP& v);

// A closed twisting three-form.
struct TwistData {
  ChartPtr chart;
  PolyForm h;
};
// Validates homogeneous degree 3 and dH = 0.
TwistData make_twist(PolyForm h);
TwistData zero_twist(const ChartPtr& chart);
// The twisted differential d_H = d - H ^ .
PolyForm d_twisted(const PolyForm& alpha, const TwistData& tw);

// Skew-symmetrized H-twisted Courant bracket:
// [X+xi, Y+eta] = [X,Y] + L_X eta - L_Y xi - 1/2 d(eta(X) - xi(Y))
//                 + iota_Y iota_X H.
GenVecP courant(const GenVecP& a, const GenVecP& b, const TwistData& tw);

// Courant-closure of the span of an isotropic polynomial frame. Because a
// maximal isotropic span equals its own pairing-orthogonal complement,
// membership of each bracket is decided by pairing it against the frame;
// the first nonvanishing pairing polynomial is returned as a witness.
struct IntegrabilityReport {
  bool closed;
  int i, j, k;   // witness triple when not closed
  Poly witness;  // <[s_i, s_j], s_k> as a polynomial
};
IntegrabilityReport integrable(const std::vector<GenVecP>& frame,
                               const TwistData& tw);

// Deformation family in normal form on a complex chart:
// eps = sum F_{ij} (d/dz_i ^ d/dz_j - 1/4 dzb_i ^ dzb_j), i < j in the
// index set. The -1/4 on the form part normalizes the family to a section
// of the bundle the generalized Kahler deformation lives in.
struct EpsilonFamily {
  ChartPtr chart;
  std::vector<int> index_set;
  std::map<std::pair<int, int>, Poly> coeffs;
};
// True iff every coefficient is holomorphic and independent of z_k for all
// k in the index set; this is the sufficient condition for the deformed
// eigenbundle to close under the Courant bracket.
bool closedness_condition(const EpsilonFamily& fam);
// The deformation of J induced by the family.
Deformation family_deformation(const GCS& j, const EpsilonFamily& fam);

// Koszul boundary delta = iota_Lambda d - d iota_Lambda with Lambda the
// inverse of omega (given as the matrix W_ij = omega(e_i, e_j)). The
// commutator order is pinned by the transport identity
//   d(T alpha) = T(d alpha) + (i/2) T(delta alpha),
// T = e^{i omega} e^{Lambda/2i}.
PolyForm koszul_delta(const PolyForm& alpha, const MatQ& omega);

}  // namespace genformal
