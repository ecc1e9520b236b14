#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "genformal/dolbeault.hpp"

namespace genformal {

// Commuting polynomial symmetry generators together with the closed
// twisting three-form they must preserve.
struct ActionData {
  ChartPtr chart;
  std::vector<GenVecP> generators;  // pure vector fields
  TwistData twist;
};
// Validates purity, pairwise-vanishing Lie brackets, and L_xi H = 0.
ActionData make_action(const ChartPtr& chart, std::vector<GenVecP> generators,
                       TwistData twist);

// The rotation generator i sum_k w_k (z_k d/dz_k - zb_k d/dzb_k); its flow
// is the diagonal circle action with the given weights.
GenVecP weight_generator(const ChartPtr& chart,
                         const std::vector<mpq_class>& weights);
// Its Hamiltonian for the flat Kahler form: sum_k w_k z_k zb_k / 2.
Poly weight_moment(const ChartPtr& chart, const std::vector<mpq_class>& weights);

// Moment data: one scalar and one one-form per generator. Deliberately
// unvalidated plain data so that broken candidates can be fed to
// check_moment for diagnosis.
struct MomentData {
  std::vector<Poly> f;
  std::vector<PolyForm> eta;
};
MomentData zero_moment(const ActionData& act);

// The section A(xi_j) = -xi_j + i df_j - eta_j whose Clifford action
// extends the Cartan differential. Moment membership places it in L.
GenVecP moment_section(const ActionData& act, const MomentData& mom, int j);

// The three defining conditions of a twisted generalized moment map,
// checked against a polynomial frame of the +i eigenbundle L.
struct MomentReport {
  bool membership;     // A(xi_j) pairs to zero against the whole L-frame
  bool invariant;      // every f_j and eta_j is invariant
  bool twist_matches;  // iota_{xi_j} H = d eta_j
  bool pass;
  int gen;            // first failing generator, -1 if none
  Poly witness;       // first nonzero pairing / invariance polynomial
  PolyForm form_witness;  // residual one-form of a failing condition
};
MomentReport check_moment(const std::vector<GenVecP>& l_frame,
                          const ActionData& act, const MomentData& mom);

// Polynomial in formal dual generators u_0..u_{r-1} (one per symmetry
// generator) with polyform coefficients: the carrier of the Cartan model
// S g* (x) Omega. The exponent vectors reuse Mono; terms with zero
// coefficient are erased, so equality is structural.
class CartanElement {
 public:
  CartanElement() = default;
  CartanElement(ChartPtr chart, int ngen)
      : chart_(std::move(chart)), ngen_(ngen) {}
  static CartanElement wrap(const ChartPtr& chart, int ngen,
                            const PolyForm& a) {
    CartanElement c(chart, ngen);
    c.add_term(Mono(ngen, 0), a);
    return c;
  }

  const ChartPtr& chart() const { return chart_; }
  int ngen() const { return ngen_; }
  const std::map<Mono, PolyForm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int u_degree() const;

  void add_term(const Mono& xmono, const PolyForm& c);
  // multiplication by u_j
  CartanElement shifted(int j) const;

  CartanElement operator+(const CartanElement& o) const;
  CartanElement operator-(const CartanElement& o) const;
  CartanElement operator-() const;
  CartanElement& operator+=(const CartanElement& o) {
    *this = *this + o;
    return *this;
  }
  CartanElement& operator-=(const CartanElement& o) {
    *this = *this - o;
    return *this;
  }
  bool operator==(const CartanElement& o) const {
    return terms_ == o.terms_;
  }
  bool operator!=(const CartanElement& o) const { return !(*this == o); }

  template <class S>
  CartanElement scaled(const S& c) const {
    CartanElement r(chart_, ngen_);
    for (const auto& [m, a] : terms_) r.add_term(m, a.scaled(c));
    return r;
  }

 private:
  ChartPtr chart_;
  int ngen_ = 0;
  std::map<Mono, PolyForm> terms_;
};

// Apply a polyform map to every coefficient (1 (x) op on the Cartan model).
CartanElement map_coeffs(const CartanElement& a,
                         const std::function<PolyForm(const PolyForm&)>& fn);

// NotInvariant unless every coefficient is killed by every generator.
void require_invariant(const CartanElement& a, const ActionData& act);

// (A alpha)(xi) = A(xi) . alpha(xi): per generator one u-shift and one
// Clifford action by the moment section. Raises u-degree by exactly one;
// with zero moment data this is the Cartan differential d'.
CartanElement script_A(const CartanElement& a, const ActionData& act,
                       const MomentData& mom);
// Coefficient-wise twisted exterior derivative.
CartanElement cartan_dH(const CartanElement& a, const ActionData& act);
// The equivariant total differential D_G = d_H + A.
CartanElement D_G(const CartanElement& a, const ActionData& act,
                  const MomentData& mom);
// delbar_G = delbar + A for an invariant integrable structure.
CartanElement delbar_G(const CartanElement& a, const GCS& jg,
                       const ActionData& act, const MomentData& mom);
// Coefficient-wise symplectic spinor transport.
CartanElement transport(const CartanElement& a, const MatQ& omega);

struct SampleReport {
  bool pass;
  int failed_sample;  // -1 when all samples hold
  CartanElement residual;
};
// (d_H A + A d_H)(alpha) = 0 exactly on every sample.
SampleReport verify_dH_A_anticommute(const std::vector<CartanElement>& samples,
                                     const ActionData& act,
                                     const MomentData& mom);

// The moment data conjugated by an invariant closed b-field:
// eta_j + iota_{xi_j} b.
MomentData b_shifted_moment(const PolyForm& b, const ActionData& act,
                            const MomentData& mom);
// Both conjugation identities of an invariant closed b-field, with the
// transformed operators built from e^b J e^{-b} and the shifted moment:
//   D_G^b(e^{-b} ^ alpha)     = e^{-b} ^ D_G(alpha)      (structure-free)
//   delbar_G^b(e^{-b} ^ alpha) = e^{-b} ^ delbar_G(alpha)
// where e^{-b} ^ is the spinor-line action matching the frozen transform
// convention. Polynomial b-fields are supported through polynomial-entry
// projectors.
SampleReport b_conjugation(const GCS& jg, const PolyForm& b,
                           const std::vector<CartanElement>& samples,
                           const ActionData& act, const MomentData& mom);

struct LeibnizReport {
  bool pass;
  PolyForm residual;
};
// del(f_j alpha) = -(i/2) A(xi_j) . alpha + f_j del(alpha), using that
// -(i/2) A(xi_j) is the L-half of wedging with df_j. On a graded section
// this is the textbook graded Leibniz rule; being linear in alpha it holds
// for arbitrary polyforms, so none is required.
LeibnizReport verify_leibniz(const GCS& jg, const PolyForm& alpha, int gen,
                             const ActionData& act, const MomentData& mom);

std::string to_string(const CartanElement& a);

}  // namespace genformal
