#include "genformal/polyforms.hpp"

#include <algorithm>
#include <bit>

namespace genformal {

namespace {

void require_pure_vector(const GenVecP& x, const char* who) {
  for (int k = 0; k < x.m(); ++k)
    require(x.cov(k).is_zero(), ErrorKind::BadArgument,
            std::string(who) + " needs a pure vector field");
}

// X applied to a function: sum_k X^k w_k(c).
Poly derive(const GenVecP& x, const Poly& c) {
  Poly r(c.chart());
  for (int k = 0; k < x.m(); ++k) {
    if (x.vec(k).is_zero()) continue;
    r += x.vec(k) * c.wirtinger(k);
  }
  return r;
}

}  // namespace

PolyForm d(const PolyForm& alpha) {
  const ChartPtr& ch = alpha.chart();
  PolyForm r(ch);
  for (const auto& [mask, c] : alpha.terms()) {
    for (int k = 0; k < ch->nvars(); ++k) {
      FormMask bit = FormMask(1) << k;
      if (mask & bit) continue;
      Poly dk = c.wirtinger(k);
      if (dk.is_zero()) continue;
      if (contract_sign(mask | bit, k) < 0) dk = -dk;
      r.add_term(mask | bit, dk);
    }
  }
  return r;
}

PolyForm iota(const GenVecP& x, const PolyForm& alpha) {
  check_same_chart(x.chart, alpha.chart());
  require_pure_vector(x, "contraction");
  PolyForm r(alpha.chart());
  for (int k = 0; k < x.m(); ++k) {
    if (x.vec(k).is_zero()) continue;
    r += alpha.contract_basis(k).scaled(x.vec(k));
  }
  return r;
}

PolyForm lie(const GenVecP& x, const PolyForm& alpha) {
  check_same_chart(x.chart, alpha.chart());
  require_pure_vector(x, "Lie derivative");
  const ChartPtr& ch = alpha.chart();
  int m = x.m();
  std::vector<PolyForm> dcomp;
  dcomp.reserve(m);
  for (int j = 0; j < m; ++j)
    dcomp.push_back(d(PolyForm(ch, x.vec(j))));
  PolyForm r(ch);
  for (const auto& [mask, c] : alpha.terms()) {
    r.add_term(mask, derive(x, c));
    FormMask mm = mask;
    while (mm) {
      int j = std::countr_zero(mm);
      mm &= mm - 1;
      if (dcomp[j].is_zero()) continue;
      // e^mask = sign * e^j ^ e^rest; replace the j factor by d(X^j)
      FormMask rest = mask & ~(FormMask(1) << j);
      Poly coeff = contract_sign(mask, j) < 0 ? Poly(-c) : c;
      r += dcomp[j].wedge(PolyForm::basis(ch, rest, coeff));
    }
  }
  return r;
}

PolyForm covector_form(const GenVecP& v) {
  PolyForm r(v.chart);
  for (int k = 0; k < v.m(); ++k) r.add_term(FormMask(1) << k, v.cov(k));
  return r;
}

GenVecP vector_part(const GenVecP& v) {
  GenVecP r(v.chart);
  for (int k = 0; k < v.m(); ++k) r.vec(k) = v.vec(k);
  return r;
}

TwistData make_twist(PolyForm h) {
  ChartPtr ch = h.chart();
  require(ch != nullptr, ErrorKind::BadArgument, "twist needs a chart");
  for (const auto& [mask, c] : h.terms())
    require(std::popcount(mask) == 3, ErrorKind::BadArgument,
            "twist must be homogeneous of degree 3");
  require(d(h).is_zero(), ErrorKind::NotClosed, "twist form is not closed");
  return TwistData{std::move(ch), std::move(h)};
}

TwistData zero_twist(const ChartPtr& chart) {
  return TwistData{chart, PolyForm(chart)};
}

PolyForm d_twisted(const PolyForm& alpha, const TwistData& tw) {
  check_same_chart(alpha.chart(), tw.chart);
  return d(alpha) - tw.h.wedge(alpha);
}

GenVecP courant(const GenVecP& a, const GenVecP& b, const TwistData& tw) {
  check_same_chart(a.chart, b.chart);
  check_same_chart(a.chart, tw.chart);
  const ChartPtr& ch = a.chart;
  int m = a.m();
  GenVecP xv = vector_part(a), yv = vector_part(b);
  GenVecP r(ch);
  // vector block: the Lie bracket [X, Y]
  for (int k = 0; k < m; ++k)
    r.vec(k) = derive(xv, b.vec(k)) - derive(yv, a.vec(k));
  // covector block
  PolyForm xi = covector_form(a), eta = covector_form(b);
  Poly eta_x(ch), xi_y(ch);
  for (int k = 0; k < m; ++k) {
    eta_x += b.cov(k) * a.vec(k);
    xi_y += a.cov(k) * b.vec(k);
  }
  PolyForm cov = lie(xv, eta) - lie(yv, xi) +
                 d(PolyForm(ch, (eta_x - xi_y) * GQ::of(-1, 2))) +
                 iota(yv, iota(xv, tw.h));
  for (const auto& [mask, c] : cov.terms()) {
    require(std::popcount(mask) == 1, ErrorKind::BadArgument,
            "bracket covector block has a non-one-form component");
    r.cov(std::countr_zero(mask)) = c;
  }
  return r;
}

IntegrabilityReport integrable(const std::vector<GenVecP>& frame,
                               const TwistData& tw) {
  require(!frame.empty(), ErrorKind::BadArgument, "empty frame");
  int n = (int)frame.size();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      require(pairing(frame[i], frame[j]).is_zero(), ErrorKind::NotIsotropic,
              "frame sections " + std::to_string(i) + ", " + std::to_string(j) +
                  " are not pairing-orthogonal");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      GenVecP br = courant(frame[i], frame[j], tw);
      for (int k = 0; k < n; ++k) {
        Poly w = pairing(br, frame[k]);
        if (!w.is_zero()) return IntegrabilityReport{false, i, j, k, w};
      }
    }
  return IntegrabilityReport{true, -1, -1, -1, Poly()};
}

namespace {

void validate_family(const EpsilonFamily& fam) {
  require(fam.chart != nullptr && fam.chart->is_complex(),
          ErrorKind::MalformedFamily, "family needs a complex chart");
  int dcx = fam.chart->complex_dim();
  std::vector<int> seen;
  for (int k : fam.index_set) {
    require(k >= 0 && k < dcx, ErrorKind::MalformedFamily,
            "family index out of range");
    require(std::find(seen.begin(), seen.end(), k) == seen.end(),
            ErrorKind::MalformedFamily, "family index repeated");
    seen.push_back(k);
  }
  for (const auto& [key, f] : fam.coeffs) {
    auto [i, j] = key;
    require(i < j, ErrorKind::MalformedFamily,
            "family coefficients must be indexed with i < j");
    bool iin = std::find(seen.begin(), seen.end(), i) != seen.end();
    bool jin = std::find(seen.begin(), seen.end(), j) != seen.end();
    require(iin && jin, ErrorKind::MalformedFamily,
            "family coefficient outside the index set");
    check_same_chart(fam.chart, f.chart());
  }
}

}  // namespace

bool closedness_condition(const EpsilonFamily& fam) {
  validate_family(fam);
  int dcx = fam.chart->complex_dim();
  for (const auto& [key, f] : fam.coeffs) {
    for (int k = 0; k < dcx; ++k)
      if (!f.wirtinger(dcx + k).is_zero()) return false;  // not holomorphic
    for (int k : fam.index_set)
      if (!f.wirtinger(k).is_zero()) return false;
  }
  return true;
}

Deformation family_deformation(const GCS& j, const EpsilonFamily& fam) {
  validate_family(fam);
  check_same_chart(j.chart(), fam.chart);
  const ChartPtr& ch = fam.chart;
  int dcx = ch->complex_dim();
  Poly one = ring_one<Poly>(ch);
  std::vector<DeformationTerm> terms;
  for (const auto& [key, f] : fam.coeffs) {
    auto [a, b] = key;
    terms.push_back({f, GenVecP::basis_vector(ch, a, one),
                     GenVecP::basis_vector(ch, b, one)});
    terms.push_back({f * GQ::of(-1, 4),
                     GenVecP::basis_covector(ch, dcx + a, one),
                     GenVecP::basis_covector(ch, dcx + b, one)});
  }
  return make_deformation(j, std::move(terms));
}

PolyForm koszul_delta(const PolyForm& alpha, const MatQ& omega) {
  const ChartPtr& ch = alpha.chart();
  int m = ch->dim();
  require(omega.rows() == m && omega.cols() == m,
          ErrorKind::NonconformableShapes, "omega must be m x m");
  require((omega + omega.transpose()).is_zero(), ErrorKind::NotSkew,
          "omega must be skew");
  require(!det(omega).is_zero(), ErrorKind::SingularOmega,
          "omega must be invertible");
  MatQ g = inverse(omega);
  return bivector_contract(g, d(alpha)) - d(bivector_contract(g, alpha));
}

}  // namespace genformal
