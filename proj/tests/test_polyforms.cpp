#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "genformal/parse.hpp"
#include "genformal/polyforms.hpp"
#include "util.hpp"

using namespace genformal;
using testutil::Rng;

namespace {

GCS standard_complex(const ChartPtr& chart) {
  int d = chart->complex_dim(), m = chart->dim();
  MatQ im(m, m);
  for (int k = 0; k < d; ++k) {
    im(k, k) = GQ::i();
    im(k + d, k + d) = -GQ::i();
  }
  return from_complex(chart, im);
}

MatQ paired_omega(const ChartPtr& chart) {
  int m = chart->dim();
  MatQ w(m, m);
  for (int k = 0; k + 1 < m; k += 2) {
    w(k, k + 1) = GQ(1);
    w(k + 1, k) = GQ(-1);
  }
  return w;
}

std::vector<GenVecP> lifted_frame(const GCS& j) {
  MatQ l = eigenbundle(j);
  std::vector<GenVecP> frame;
  for (int c = 0; c < l.cols(); ++c) {
    GenVecQ v(j.chart());
    v.comps = l.col(c);
    frame.push_back(lift(v, j.chart()));
  }
  return frame;
}

}  // namespace

TEST_CASE("exterior derivative and the Cartan calculus") {
  auto c2 = Chart::complex_chart(2);
  CHECK(d(parse_polyform(c2, "z0*dz1")) == parse_polyform(c2, "dz0∧dz1"));
  CHECK(d(parse_polyform(c2, "zb0*z0")) ==
        parse_polyform(c2, "zb0*dz0 + z0*dzb0"));

  Rng rng(2101);
  auto r3 = Chart::real_chart(3);
  for (int t = 0; t < 20; ++t) {
    PolyForm a = rng.polyform(r3);
    CHECK(d(d(a)).is_zero());
    GenVecP x = rng.vec_field(r3);
    CHECK(lie(x, a) == d(iota(x, a)) + iota(x, d(a)));
  }
  for (int t = 0; t < 10; ++t) {
    PolyForm a = rng.polyform(c2);
    CHECK(d(d(a)).is_zero());
  }
  CHECK_THROWS_AS(iota(rng.section(r3), rng.polyform(r3)), Error);
  CHECK_THROWS_AS(iota(rng.vec_field(r3), rng.polyform(c2)), Error);
}

TEST_CASE("twisted differential squares to zero for closed twists") {
  auto r4 = Chart::real_chart(4);
  Rng rng(2102);
  for (int t = 0; t < 20; ++t) {
    PolyForm a = rng.polyform(r4);
    CHECK(d_twisted(a, zero_twist(r4)) == d(a));
    // closed cubic: constant three-form plus an exact piece
    PolyForm h = rng.polyform_degree(r4, 3, 1, 0) + d(rng.polyform_degree(r4, 2));
    TwistData tw = make_twist(h);
    CHECK(d_twisted(d_twisted(a, tw), tw).is_zero());
    PolyForm one(r4, ring_one<Poly>(r4));
    CHECK(d_twisted(one, tw) == -h);
  }
  try {
    make_twist(parse_polyform(r4, "x0*dx1∧dx2∧dx3"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotClosed);
  }
  CHECK_THROWS_AS(make_twist(parse_polyform(r4, "dx0")), Error);
}

TEST_CASE("courant bracket on vector fields and twists") {
  auto r4 = Chart::real_chart(4);
  Poly one = ring_one<Poly>(r4);
  GenVecP e0 = GenVecP::basis_vector(r4, 0, one);
  GenVecP e1 = GenVecP::basis_vector(r4, 1, one);
  CHECK(courant(e0, e1, zero_twist(r4)).is_zero());

  // constant twist: [e0, e1] picks up iota_Y iota_X H = dx2
  TwistData tw = make_twist(parse_polyform(r4, "dx0∧dx1∧dx2"));
  GenVecP br = courant(e0, e1, tw);
  CHECK(vector_part(br).is_zero());
  CHECK(covector_form(br) == parse_polyform(r4, "dx2"));

  // polynomial vector fields reduce to the Lie bracket when untwisted
  GenVecP x(r4), y(r4);
  x.vec(0) = Poly::var(r4, 1);
  y.vec(1) = Poly::var(r4, 0);
  GenVecP lb = courant(x, y, zero_twist(r4));
  CHECK(covector_form(lb).is_zero());
  CHECK(lb.vec(1) == Poly::var(r4, 1));
  CHECK(lb.vec(0) == -Poly::var(r4, 0));

  Rng rng(2103);
  for (int t = 0; t < 20; ++t) {
    PolyForm h = rng.polyform_degree(r4, 3, 1, 0) + d(rng.polyform_degree(r4, 2));
    TwistData rtw = make_twist(h);
    GenVecP a = rng.section(r4), b = rng.section(r4);
    GenVecP ab = courant(a, b, rtw), ba = courant(b, a, rtw);
    CHECK((ab + ba).is_zero());
    // bracket of pure vector fields acts as the commutator on functions
    GenVecP xv = rng.vec_field(r4), yv = rng.vec_field(r4);
    PolyForm f(r4, rng.poly(r4));
    GenVecP lie_br = courant(xv, yv, zero_twist(r4));
    CHECK(lie(xv, lie(yv, f)) - lie(yv, lie(xv, f)) ==
          lie(vector_part(lie_br), f));
  }
}

TEST_CASE("integrability of eigenbundle frames") {
  auto c2 = Chart::complex_chart(2);
  GCS j2 = standard_complex(c2);
  IntegrabilityReport flat = integrable(lifted_frame(j2), zero_twist(c2));
  CHECK(flat.closed);

  // the deformed frame of the C^4 family stays Courant-closed
  auto c4 = Chart::complex_chart(4);
  GCS ji = standard_complex(c4);
  EpsilonFamily fam{c4, {2, 3}, {}};
  fam.coeffs[{2, 3}] = parse_poly(c4, "1/100*z0*z1");
  CHECK(closedness_condition(fam));
  std::vector<GenVecP> frame = deformed_frame(ji, family_deformation(ji, fam));
  IntegrabilityReport rep = integrable(frame, zero_twist(c4));
  CHECK(rep.closed);

  // frame recombination does not change the verdict
  Rng rng(2104);
  MatQ mix;
  do {
    mix = rng.mat(8, 8);
  } while (det(mix).is_zero());
  std::vector<GenVecP> mixed;
  for (int i = 0; i < 8; ++i) {
    GenVecP s(c4);
    for (int j = 0; j < 8; ++j) s = s + frame[j].scaled(mix(j, i));
    mixed.push_back(s);
  }
  CHECK(integrable(mixed, zero_twist(c4)).closed);

  // non-holomorphic coefficient: closedness fails and a witness appears
  EpsilonFamily bad{c4, {2, 3}, {}};
  bad.coeffs[{2, 3}] = parse_poly(c4, "zb1");
  CHECK(!closedness_condition(bad));
  std::vector<GenVecP> bad_frame =
      deformed_frame(ji, family_deformation(ji, bad));
  IntegrabilityReport fail = integrable(bad_frame, zero_twist(c4));
  CHECK(!fail.closed);
  CHECK(!fail.witness.is_zero());
  CHECK(fail.i >= 0);
  CHECK(fail.k < 8);

  // a frame that is not isotropic is rejected
  Poly one = ring_one<Poly>(c4);
  try {
    integrable({GenVecP::basis_vector(c4, 0, one),
                GenVecP::basis_covector(c4, 0, one)},
               zero_twist(c4));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIsotropic);
  }
}

TEST_CASE("closedness condition for deformation families") {
  // blow-up style family on C^5: F = z0 z1 z4 over directions {2, 3}
  auto c5 = Chart::complex_chart(5);
  EpsilonFamily fam{c5, {2, 3}, {}};
  fam.coeffs[{2, 3}] = parse_poly(c5, "1/100*z0*z1*z4");
  CHECK(closedness_condition(fam));
  GCS j5 = standard_complex(c5);
  CHECK(integrable(deformed_frame(j5, family_deformation(j5, fam)),
                   zero_twist(c5))
            .closed);

  // a coefficient depending on a deformation direction fails
  EpsilonFamily dep{c5, {2, 3}, {}};
  dep.coeffs[{2, 3}] = parse_poly(c5, "z0*z2");
  CHECK(!closedness_condition(dep));

  auto c4 = Chart::complex_chart(4);
  EpsilonFamily conj_dep{c4, {2, 3}, {}};
  conj_dep.coeffs[{2, 3}] = parse_poly(c4, "zb0");
  CHECK(!closedness_condition(conj_dep));

  EpsilonFamily out_of_range{c4, {2, 9}, {}};
  try {
    closedness_condition(out_of_range);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedFamily);
  }
  EpsilonFamily real_chart_fam{Chart::real_chart(4), {0, 1}, {}};
  CHECK_THROWS_AS(closedness_condition(real_chart_fam), Error);
  EpsilonFamily outside{c4, {2, 3}, {}};
  outside.coeffs[{0, 1}] = parse_poly(c4, "z2");
  CHECK_THROWS_AS(closedness_condition(outside), Error);
}

TEST_CASE("Koszul boundary and the symplectic transport identity") {
  Rng rng(2105);
  for (int m : {2, 4}) {
    auto chart = Chart::real_chart(m);
    MatQ w = paired_omega(chart);
    PolyForm one(chart, ring_one<Poly>(chart));
    CHECK(koszul_delta(one, w).is_zero());
    for (int t = 0; t < 20; ++t) {
      PolyForm a = rng.polyform(chart);
      PolyForm da = koszul_delta(a, w);
      CHECK(koszul_delta(da, w).is_zero());
      // delta lowers degree
      if (!da.is_zero()) CHECK(da.max_degree() <= std::max(a.max_degree() - 1, 0));
      // d(T a) = T(d a) + (i/2) T(delta a)
      PolyForm lhs = d(symplectic_transport(chart, w, a));
      PolyForm rhs = symplectic_transport(chart, w, d(a)) +
                     symplectic_transport(chart, w, da)
                         .scaled(GQ::i() * GQ::of(1, 2));
      CHECK(lhs == rhs);
    }
  }
  // constant-coefficient top form is killed by both d and the commutator
  auto r2 = Chart::real_chart(2);
  CHECK(koszul_delta(parse_polyform(r2, "dx0∧dx1"), paired_omega(r2)).is_zero());
  CHECK_THROWS_AS(koszul_delta(parse_polyform(r2, "dx0"), MatQ::identity(2)),
                  Error);
}
