#include "genformal/equivariant.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace genformal {

namespace {

PolyForm as_zero_form(const ChartPtr& chart, const Poly& f) {
  PolyForm r(chart);
  r.add_term(0, f);
  return r;
}

void check_moment_shape(const ActionData& act, const MomentData& mom) {
  require(mom.f.size() == act.generators.size() &&
              mom.eta.size() == act.generators.size(),
          ErrorKind::NonconformableShapes,
          "moment data needs one scalar and one one-form per generator");
}

}  // namespace

ActionData make_action(const ChartPtr& chart, std::vector<GenVecP> generators,
                       TwistData twist) {
  check_same_chart(chart, twist.chart);
  int m = chart->dim();
  for (const auto& g : generators) {
    check_same_chart(chart, g.chart);
    for (int k = 0; k < m; ++k)
      require(g.cov(k).is_zero(), ErrorKind::BadArgument,
              "action generators must be pure vector fields");
  }
  TwistData none = zero_twist(chart);
  for (size_t j = 0; j < generators.size(); ++j)
    for (size_t k = j + 1; k < generators.size(); ++k)
      require(courant(generators[j], generators[k], none).is_zero(),
              ErrorKind::NotCommuting, "action generators must commute");
  for (const auto& g : generators)
    require(lie(g, twist.h).is_zero(), ErrorKind::NotInvariant,
            "the twisting form must be invariant under the action");
  return ActionData{chart, std::move(generators), std::move(twist)};
}

GenVecP weight_generator(const ChartPtr& chart,
                         const std::vector<mpq_class>& weights) {
  require(chart->is_complex(), ErrorKind::BadArgument,
          "weight generators need a complex chart");
  int d = chart->complex_dim();
  require(static_cast<int>(weights.size()) == d, ErrorKind::InvalidWeights,
          "one weight per complex coordinate");
  GenVecP v(chart);
  for (int k = 0; k < d; ++k) {
    GQ iw(mpq_class(0), weights[k]);
    v.vec(k) = Poly::var(chart, k, iw);
    v.vec(d + k) = Poly::var(chart, d + k, -iw);
  }
  return v;
}

Poly weight_moment(const ChartPtr& chart,
                   const std::vector<mpq_class>& weights) {
  require(chart->is_complex(), ErrorKind::BadArgument,
          "weight moments need a complex chart");
  int d = chart->complex_dim();
  require(static_cast<int>(weights.size()) == d, ErrorKind::InvalidWeights,
          "one weight per complex coordinate");
  Poly f(chart);
  for (int k = 0; k < d; ++k)
    f += Poly::var(chart, k, GQ(weights[k]) * GQ::of(1, 2)) *
         Poly::var(chart, d + k);
  return f;
}

MomentData zero_moment(const ActionData& act) {
  MomentData m;
  m.f.assign(act.generators.size(), Poly(act.chart));
  m.eta.assign(act.generators.size(), PolyForm(act.chart));
  return m;
}

GenVecP moment_section(const ActionData& act, const MomentData& mom, int j) {
  check_moment_shape(act, mom);
  require(j >= 0 && j < static_cast<int>(act.generators.size()),
          ErrorKind::BadArgument, "generator index out of range");
  GenVecP r = -act.generators[j];
  PolyForm one =
      d(as_zero_form(act.chart, mom.f[j])).scaled(GQ::i()) - mom.eta[j];
  for (const auto& [mask, c] : one.terms()) {
    require(std::popcount(mask) == 1, ErrorKind::BadArgument,
            "moment one-forms must be homogeneous of degree 1");
    r.cov(std::countr_zero(mask)) += c;
  }
  return r;
}

MomentReport check_moment(const std::vector<GenVecP>& l_frame,
                          const ActionData& act, const MomentData& mom) {
  check_moment_shape(act, mom);
  MomentReport rep{true, true,       true,
                   true, -1,         Poly(act.chart),
                   PolyForm(act.chart)};
  int ngen = static_cast<int>(act.generators.size());
  // Membership in L: against a maximal isotropic frame, vanishing of every
  // pairing is exactly membership in the span.
  for (int j = 0; j < ngen && rep.membership; ++j) {
    GenVecP aj = moment_section(act, mom, j);
    for (const auto& s : l_frame) {
      Poly p = pairing(aj, s);
      if (!p.is_zero()) {
        rep.membership = false;
        if (rep.gen < 0) {
          rep.gen = j;
          rep.witness = p;
        }
        break;
      }
    }
  }
  // Invariance of every scalar and one-form under every generator.
  for (int j = 0; j < ngen && rep.invariant; ++j) {
    for (int k = 0; k < ngen; ++k) {
      PolyForm lf = lie(act.generators[j], as_zero_form(act.chart, mom.f[k]));
      if (lf.is_zero()) lf = lie(act.generators[j], mom.eta[k]);
      if (!lf.is_zero()) {
        rep.invariant = false;
        if (rep.gen < 0) {
          rep.gen = j;
          rep.form_witness = lf;
        }
        break;
      }
    }
  }
  // Compatibility with the twist: iota_{xi_j} H = d eta_j.
  for (int j = 0; j < ngen && rep.twist_matches; ++j) {
    PolyForm res = iota(act.generators[j], act.twist.h) - d(mom.eta[j]);
    if (!res.is_zero()) {
      rep.twist_matches = false;
      if (rep.gen < 0) {
        rep.gen = j;
        rep.form_witness = res;
      }
    }
  }
  rep.pass = rep.membership && rep.invariant && rep.twist_matches;
  return rep;
}

int CartanElement::u_degree() const {
  int deg = 0;
  for (const auto& [m, a] : terms_) {
    int s = 0;
    for (auto e : m) s += e;
    deg = std::max(deg, s);
  }
  return deg;
}

void CartanElement::add_term(const Mono& xmono, const PolyForm& c) {
  require(static_cast<int>(xmono.size()) == ngen_,
          ErrorKind::NonconformableShapes,
          "exponent vector length must match the generator count");
  check_same_chart(chart_, c.chart());
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(xmono, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CartanElement CartanElement::shifted(int j) const {
  require(j >= 0 && j < ngen_, ErrorKind::BadArgument,
          "generator index out of range");
  CartanElement r(chart_, ngen_);
  for (const auto& [m, a] : terms_) {
    Mono mm = m;
    ++mm[j];
    r.add_term(mm, a);
  }
  return r;
}

CartanElement CartanElement::operator+(const CartanElement& o) const {
  check_same_chart(chart_, o.chart_);
  require(ngen_ == o.ngen_, ErrorKind::NonconformableShapes,
          "generator counts differ");
  CartanElement r = *this;
  for (const auto& [m, a] : o.terms_) r.add_term(m, a);
  return r;
}

CartanElement CartanElement::operator-(const CartanElement& o) const {
  return *this + (-o);
}

CartanElement CartanElement::operator-() const {
  CartanElement r(chart_, ngen_);
  for (const auto& [m, a] : terms_) r.add_term(m, -a);
  return r;
}

CartanElement map_coeffs(const CartanElement& a,
                         const std::function<PolyForm(const PolyForm&)>& fn) {
  CartanElement r(a.chart(), a.ngen());
  for (const auto& [m, c] : a.terms()) r.add_term(m, fn(c));
  return r;
}

void require_invariant(const CartanElement& a, const ActionData& act) {
  check_same_chart(a.chart(), act.chart);
  require(a.ngen() == static_cast<int>(act.generators.size()),
          ErrorKind::NonconformableShapes,
          "element and action have different generator counts");
  for (const auto& [m, c] : a.terms())
    for (const auto& g : act.generators)
      require(lie(g, c).is_zero(), ErrorKind::NotInvariant,
              "equivariant operators need invariant coefficients");
}

CartanElement script_A(const CartanElement& a, const ActionData& act,
                       const MomentData& mom) {
  check_moment_shape(act, mom);
  require_invariant(a, act);
  CartanElement r(a.chart(), a.ngen());
  for (int j = 0; j < static_cast<int>(act.generators.size()); ++j) {
    GenVecP aj = moment_section(act, mom, j);
    for (const auto& [m, c] : a.terms()) {
      Mono mm = m;
      ++mm[j];
      r.add_term(mm, clifford(aj, c));
    }
  }
  return r;
}

CartanElement cartan_dH(const CartanElement& a, const ActionData& act) {
  check_same_chart(a.chart(), act.chart);
  require(a.ngen() == static_cast<int>(act.generators.size()),
          ErrorKind::NonconformableShapes,
          "element and action have different generator counts");
  return map_coeffs(
      a, [&](const PolyForm& c) { return d_twisted(c, act.twist); });
}

CartanElement D_G(const CartanElement& a, const ActionData& act,
                  const MomentData& mom) {
  return cartan_dH(a, act) + script_A(a, act, mom);
}

CartanElement delbar_G(const CartanElement& a, const GCS& jg,
                       const ActionData& act, const MomentData& mom) {
  CartanElement vertical = map_coeffs(a, [&](const PolyForm& c) {
    return dolbeault_delbar(jg, c, act.twist);
  });
  return vertical + script_A(a, act, mom);
}

CartanElement transport(const CartanElement& a, const MatQ& omega) {
  return map_coeffs(a, [&](const PolyForm& c) {
    return symplectic_transport(a.chart(), omega, c);
  });
}

SampleReport verify_dH_A_anticommute(const std::vector<CartanElement>& samples,
                                     const ActionData& act,
                                     const MomentData& mom) {
  SampleReport rep{true, -1, CartanElement()};
  for (size_t idx = 0; idx < samples.size(); ++idx) {
    const CartanElement& s = samples[idx];
    CartanElement r = cartan_dH(script_A(s, act, mom), act) +
                      script_A(cartan_dH(s, act), act, mom);
    if (!r.is_zero()) {
      rep.pass = false;
      rep.failed_sample = static_cast<int>(idx);
      rep.residual = r;
      break;
    }
  }
  return rep;
}

MomentData b_shifted_moment(const PolyForm& b, const ActionData& act,
                            const MomentData& mom) {
  check_moment_shape(act, mom);
  require(b == b.degree_component(2), ErrorKind::BadArgument,
          "b-field must be a homogeneous two-form");
  MomentData r = mom;
  for (size_t j = 0; j < act.generators.size(); ++j)
    r.eta[j] += iota(act.generators[j], b);
  return r;
}

namespace {

// delbar through a polynomial-entry operator matrix, summed over the
// graded components of an arbitrary polyform.
PolyForm delbar_of(const SpinRep<Poly>& rho, int n, const PolyForm& c,
                   const TwistData& tw) {
  PolyForm r(tw.chart);
  for (const auto& [k, comp] : grading_decompose(rho, n, c))
    r += split_dH(rho, n, GradedSection{comp, k}, tw).upper.alpha;
  return r;
}

}  // namespace

SampleReport b_conjugation(const GCS& jg, const PolyForm& b,
                           const std::vector<CartanElement>& samples,
                           const ActionData& act, const MomentData& mom) {
  require(b == b.degree_component(2), ErrorKind::BadArgument,
          "b-field must be a homogeneous two-form");
  require(d(b).is_zero(), ErrorKind::NotClosed, "b-field must be closed");
  for (const auto& g : act.generators)
    require(lie(g, b).is_zero(), ErrorKind::NotInvariant,
            "b-field must be invariant under the action");
  MomentData momb = b_shifted_moment(b, act, mom);
  SpinRep<Poly> rho_b(act.chart, b_transform_matrix(jg, b));
  PolyForm ebneg = wedge_exp(-b);
  auto conj_line = [&](const PolyForm& c) { return ebneg.wedge(c); };
  SampleReport rep{true, -1, CartanElement()};
  for (size_t idx = 0; idx < samples.size(); ++idx) {
    const CartanElement& s = samples[idx];
    CartanElement moved = map_coeffs(s, conj_line);
    // total differential: D_G^b on the moved element vs the moved D_G
    CartanElement r =
        D_G(moved, act, momb) - map_coeffs(D_G(s, act, mom), conj_line);
    if (r.is_zero()) {
      // half differential: delbar of e^b J e^{-b} plus the shifted extension
      CartanElement lhs = map_coeffs(moved, [&](const PolyForm& c) {
        return delbar_of(rho_b, jg.n(), c, act.twist);
      });
      lhs += script_A(moved, act, momb);
      r = lhs - map_coeffs(delbar_G(s, jg, act, mom), conj_line);
    }
    if (!r.is_zero()) {
      rep.pass = false;
      rep.failed_sample = static_cast<int>(idx);
      rep.residual = r;
      break;
    }
  }
  return rep;
}

LeibnizReport verify_leibniz(const GCS& jg, const PolyForm& alpha, int gen,
                             const ActionData& act, const MomentData& mom) {
  GenVecP aj = moment_section(act, mom, gen);
  const Poly& f = mom.f[gen];
  PolyForm lhs = dolbeault_del(jg, alpha.scaled(f), act.twist);
  PolyForm rhs = clifford(aj, alpha).scaled(GQ::i() * GQ::of(-1, 2)) +
                 dolbeault_del(jg, alpha, act.twist).scaled(f);
  PolyForm residual = lhs - rhs;
  return LeibnizReport{residual.is_zero(), std::move(residual)};
}

std::string to_string(const CartanElement& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    bool unit = true;
    for (int j = 0; j < a.ngen(); ++j) {
      for (int e = 0; e < m[j]; ++e) {
        os << "u" << j << "*";
        unit = false;
      }
    }
    if (unit)
      os << to_string(c);
    else
      os << "(" << to_string(c) << ")";
  }
  return os.str();
}

}  // namespace genformal
