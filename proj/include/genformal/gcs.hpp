#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "genformal/matrix.hpp"
#include "genformal/spinor.hpp"

namespace genformal {

// Conjugate of a V + V* coordinate vector: conjugate entries and swap the
// z / zb directions in both the vector and covector blocks.
std::vector<GQ> conj_coords(const ChartPtr& chart, const std::vector<GQ>& v);
// Conjugate of an operator matrix (conjugation-sandwich); works for m x m
// matrices on V and 2m x 2m matrices on V + V*.
MatQ conj_operator(const ChartPtr& chart, const MatQ& m);
// Half-normalized pairing evaluated on coordinate vectors.
GQ pairing_coords(const ChartPtr& chart, const std::vector<GQ>& u,
                  const std::vector<GQ>& v);
// A rational basis of the conjugation-fixed (real) points of a
// conjugation-stable span; returned columns are real vectors, chosen
// greedily so no complex elimination destroys realness.
MatQ real_basis_of(const ChartPtr& chart, const MatQ& span);
// Basis change from real coordinates: on complex charts the columns are
// dz+dzb / i(dz-dzb) pairs (and the vector analogues); identity on real
// charts.
MatQ realification_basis(const ChartPtr& chart);

// A constant generalized complex structure on the chart's V + V*.
// Validation is exact: J^2 = -1 and pairing-orthogonality.
class GCS {
 public:
  GCS(ChartPtr chart, MatQ j);

  const ChartPtr& chart() const { return chart_; }
  const MatQ& matrix() const { return j_; }
  int m() const { return chart_->dim(); }
  // Half the real dimension; the grading runs over -n..n.
  int n() const { return chart_->dim() / 2; }
  SpinRep<GQ> rho() const { return SpinRep<GQ>(chart_, j_); }

  bool operator==(const GCS& o) const { return j_ == o.j_; }

 private:
  ChartPtr chart_;
  MatQ j_;
};

// diag(-I, I^T) for an m x m complex structure I on V.
GCS from_complex(const ChartPtr& chart, const MatQ& i_matrix);
// [[0, -W^{-T}], [W^T, 0]] for the matrix W_ij = omega(e_i, e_j).
GCS from_symplectic(const ChartPtr& chart, const MatQ& omega);
// e^B J e^{-B} with e^B = [[1, 0], [B^T, 1]], B skew.
GCS b_transform(const GCS& j, const MatQ& b);

// Echelonized basis of the +i eigenspace L (columns, 2m x m). Validates
// maximal isotropy and L intersect conj(L) = 0.
MatQ eigenbundle(const GCS& j);
// Complex codimension of the projection of L to the complexified V.
int type_of(const GCS& j);

GenVecQ coords_to_genvec(const ChartPtr& chart, const std::vector<GQ>& v);

// Deformation data: an element of Lambda^2 of the conjugate eigenbundle,
// stored as wedge pairs of polynomial sections with a polynomial
// coefficient.
struct DeformationTerm {
  Poly coeff;
  GenVecP a, b;
};
struct Deformation {
  ChartPtr chart;
  std::vector<DeformationTerm> terms;
};
// Validates that every section lies in conj(L) for the given structure.
Deformation make_deformation(const GCS& j, std::vector<DeformationTerm> terms);

// Frame of the deformed eigenbundle {Y + iota_Y eps : Y in L} as polynomial
// sections, ordered like the columns of eigenbundle(j).
std::vector<GenVecP> deformed_frame(const GCS& j, const Deformation& eps);
// The deformed structure. A point is required unless the deformed frame is
// constant; fails with NotGeneralizedComplex where the frame and its
// conjugate stop spanning.
GCS deform(const GCS& j, const Deformation& eps,
           const std::optional<Point>& at = std::nullopt);
// Structure with prescribed eigenbundle frame (columns): J = C D C^{-1}.
GCS from_frame(const ChartPtr& chart, const MatQ& frame);

// A generalized Kahler pair: commuting structures whose product metric
// G = -J1 J2 is positive definite. The certificate keeps the real Gram
// matrix and its leading principal minors.
struct GKPair {
  GCS j1, j2;
  MatQ g;
  MatQ gram;                      // real entries, in the realified basis
  std::vector<mpq_class> minors;  // leading principal minors, all positive
};
GKPair gk_pair(const GCS& j1, const GCS& j2);

// Joint eigenspace decomposition U^{p,q} of (rho(J1), rho(J2)); keys are
// (p, q), values echelonized bases. Dimensions always sum to 2^m.
std::map<std::pair<int, int>, MatQ> pq_decomposition(const GKPair& pair);

// Dirac restriction of J to the subspace spanned by the (real, rational)
// columns of w: L_W = {X + xi|_W : X + xi in L, X in W_C}, returned as a
// structure on a real chart of dimension k = cols(w) in the basis w.
GCS restrict_dirac(const GCS& j, const MatQ& w);

// Common fixed-space splitting for finitely many real pairing-orthogonal
// generators g on V (extended to V + V* as diag(g, g^{-T})) commuting
// with J: V = V1 + N with V1 the common fixed space and N the span of the
// moving directions; checks that V1 + Ann(N) is J-invariant and restricts.
struct SplitResult {
  MatQ fixed_subspace;   // basis of V1 (real columns)
  MatQ moving_sum;       // basis of N
  MatQ annihilator;      // basis of Ann(N) in V*
  GCS restricted;
};
SplitResult weight_split(const GCS& j, const std::vector<MatQ>& generators);

}  // namespace genformal
