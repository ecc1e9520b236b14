#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "genformal/examples.hpp"

using namespace genformal;

namespace {

// Point from holomorphic coordinates; conjugate slots filled in.
Point pt(const ChartPtr& ch, const std::vector<GQ>& z) {
  int d = ch->complex_dim();
  std::vector<GQ> v(ch->nvars(), GQ(0));
  for (int k = 0; k < d; ++k) {
    v[k] = z[k];
    v[k + d] = z[k].conj();
  }
  return Point(ch, v);
}

mpq_class q(long num, long den) { return mpq_class(num) / mpq_class(den); }

// A scene whose level set contains points where the circle degenerates:
// opposite weights on the first two coordinates, level zero.
Scene degenerate_orbit_scene() {
  ChartPtr ch = Chart::complex_chart(4);
  Scene s;
  s.chart = ch;
  s.omega = flat_kahler_form(ch);
  s.cplx = standard_complex_matrix(ch);
  s.family.chart = ch;
  s.twist = zero_twist(ch);
  s.b = PolyForm(ch);
  std::vector<mpq_class> w = {1, -1, 0, 0};
  s.weights = {w};
  s.action = make_action(ch, {weight_generator(ch, w)}, s.twist);
  s.moment = MomentData{{weight_moment(ch, w)}, {PolyForm(ch)}};
  s.level = {0};
  return make_scene(std::move(s));
}

}  // namespace

TEST_CASE("diagonal circle scene: structure, generator, and moment data") {
  Scene s = build_cpn(3, q(1, 100));
  ChartPtr ch = s.chart;
  int d = 4;
  CHECK(scene_rank(s) == 1);
  CHECK(quotient_dim(s) == 3);
  CHECK(s.points.size() == 8);
  CHECK(s.fixed_points.size() == 4);

  // the generator is (i/2) sum_k (z_k d/dz_k - zb_k d/dzb_k)
  const GenVecP& g = s.action.generators[0];
  for (int k = 0; k < d; ++k) {
    CHECK(g.vec(k) == Poly::var(ch, k, GQ(mpq_class(0), q(1, 2))));
    CHECK(g.vec(d + k) == Poly::var(ch, d + k, GQ(mpq_class(0), q(-1, 2))));
    CHECK(g.cov(k).is_zero());
    CHECK(g.cov(d + k).is_zero());
  }

  // its Hamiltonian takes the level value 1/2 on every distinguished point
  for (const Point& p : s.points)
    CHECK(s.moment.f[0].eval(p) == GQ(q(1, 2)));

  // full moment verification against the symplectic eigenframe
  MomentReport mr = check_moment(scene_omega_frame(s), s.action, s.moment);
  CHECK(mr.membership);
  CHECK(mr.invariant);
  CHECK(mr.twist_matches);
  CHECK(mr.pass);

  // a perturbed Hamiltonian is caught with a witness
  MomentData broken = s.moment;
  broken.f[0] += Poly::var(ch, 2) * Poly::var(ch, 2 + d);
  MomentReport bad = check_moment(scene_omega_frame(s), s.action, broken);
  CHECK_FALSE(bad.pass);
  CHECK(bad.gen == 0);
  CHECK_FALSE(bad.witness.is_zero());
}

TEST_CASE("diagonal circle scene: deformation family checks") {
  Scene s = build_cpn(3, q(1, 100));
  ChartPtr ch = s.chart;

  // the scaled family deforms integrably and satisfies the closedness test
  CHECK(closedness_condition(scaled_family(s)));
  IntegrabilityReport ir = integrable(scene_eps_frame(s), s.twist);
  CHECK(ir.closed);

  // invariance under the torus and the auxiliary circle, as exact identities
  CHECK(family_invariant(s.family, s.weights[0]));
  CHECK(family_invariant(s.family, s.aux_weights));
  CHECK_FALSE(family_invariant(s.family, {1, 0, 0, 0}));

  // an antiholomorphic coefficient breaks the closedness condition
  EpsilonFamily anti = s.family;
  anti.coeffs[{2, 3}] = Poly::var(ch, 4) * Poly::var(ch, 1);
  CHECK_FALSE(closedness_condition(anti));

  // so does dependence on the deformed directions
  EpsilonFamily mixed = s.family;
  mixed.coeffs[{2, 3}] = Poly::var(ch, 0) * Poly::var(ch, 2);
  CHECK_FALSE(closedness_condition(mixed));
}

TEST_CASE("diagonal circle scene: generator stays transverse to pi(L)") {
  Scene s = build_cpn(3, q(1, 100));
  const GenVecP& g = s.action.generators[0];
  for (const Point& p : s.points) CHECK_FALSE(field_in_pi_L(s, g, p));
  // eigenframe sections themselves project inside, by definition
  std::vector<GenVecP> frame = scene_eps_frame(s);
  for (const Point& p : s.points) CHECK(field_in_pi_L(s, frame[0], p));
}

TEST_CASE("diagonal circle scene: generalized metric at every sample") {
  Scene s = build_cpn(3, q(1, 100));
  GCS jw = scene_symplectic(s);
  GCS jc = scene_complex(s);
  Deformation df = scene_deformation(s);

  GKPair flat = gk_pair(jw, jc);
  CHECK((int)flat.minors.size() == 2 * s.chart->dim());
  for (const auto& mk : flat.minors) CHECK(mk > 0);

  for (const Point& p : s.points) {
    GKPair pair = gk_pair(jw, deform(jc, df, p));
    for (const auto& mk : pair.minors) CHECK(mk > 0);
  }
}

TEST_CASE("reduced types across the level set") {
  Scene s = build_cpn(3, q(1, 100));
  ChartPtr ch = s.chart;

  // the deformation coefficient vanishes on the axes: type three there
  for (const Point& p : s.fixed_points)
    CHECK(quotient_type(s, p) == std::pair<int, int>{0, 3});
  // and is nonzero at the mixed samples: type drops to one
  for (size_t i = 4; i < s.points.size(); ++i)
    CHECK(quotient_type(s, s.points[i]) == std::pair<int, int>{0, 1});
  // both values share the parity of the quotient dimension
  for (const Point& p : s.points)
    CHECK((quotient_type(s, p).second - quotient_dim(s)) % 2 == 0);

  // switching the family off makes the type constant
  Scene flat = s;
  flat.family.coeffs.clear();
  flat = make_scene(std::move(flat));
  for (const Point& p : flat.points)
    CHECK(quotient_type(flat, p) == std::pair<int, int>{0, 3});

  // off the level set the computation refuses
  try {
    quotient_type(s, pt(ch, {GQ(1), GQ(0), GQ(0), GQ(0)}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOnLevelSet);
  }

  // where the generator vanishes on the level set the orbit degenerates
  Scene deg = degenerate_orbit_scene();
  try {
    quotient_type(deg, pt(deg.chart, {GQ(0), GQ(0), GQ(1), GQ(0)}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFree);
  }
}

TEST_CASE("reduced type is constant along rational rotations") {
  Scene s = build_cpn(3, q(1, 100));
  GQ lam(q(3, 5), q(4, 5));
  GQ lam2(q(5, 13), q(12, 13));

  // integerized weight row (1/2, ...) -> (1, ...): plain scaling by lambda
  Point axis = s.fixed_points[0];
  Point moved = rotate_point(s, 0, lam, axis);
  CHECK(moved.values[0] == lam * axis.values[0]);

  for (const Point& p : s.points) {
    auto t = quotient_type(s, p);
    CHECK(quotient_type(s, rotate_point(s, 0, lam, p)) == t);
    CHECK(quotient_type(s, rotate_point(s, 0, lam2, p)) == t);
  }

  try {
    rotate_point(s, 0, GQ(mpq_class(1), mpq_class(1)), axis);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadArgument);
  }
  try {
    rotate_point(s, 3, lam, axis);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadArgument);
  }
}

TEST_CASE("blow-up scene: auxiliary weight conditions") {
  auto dw = default_blowup_weights(3);
  CHECK(dw == std::vector<mpq_class>{1, 2, 3, 1, 1});
  CHECK(default_blowup_weights(4) == std::vector<mpq_class>{1, 2, 3, 4, 1, 2});

  Scene b = build_blowup(3, dw, q(1, 100));
  CHECK(scene_rank(b) == 2);
  CHECK(quotient_dim(b) == 3);
  CHECK(b.fixed_points.size() == 6);
  CHECK(b.points.size() == 8);

  auto expect_invalid = [&](std::vector<mpq_class> l, const char* cond) {
    try {
      build_blowup(3, l, q(1, 100));
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidWeights);
      CHECK(std::string(e.what()).find(cond) != std::string::npos);
    }
  };
  expect_invalid({1, 1, 3, 4, 4}, "condition (a)");
  expect_invalid({1, 2, 3, 4, 9}, "condition (b)");
  expect_invalid({1, 5, 3, 4, 1}, "condition (c)");

  // the weight vector must have one entry per chart coordinate
  try {
    build_blowup(3, {1, 2, 3, 4, 9, -2}, q(1, 100));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadArgument);
  }
  CHECK_THROWS_AS(build_blowup(2, {1, 2, 1, 1}, 1), Error);
  CHECK_THROWS_AS(build_blowup(7, default_blowup_weights(6), 1), Error);
  CHECK_THROWS_AS(build_cpn(2, 1), Error);
  CHECK_THROWS_AS(build_cpn(3, 0), Error);
}

TEST_CASE("blow-up scene: moment data, invariance, and reduced types") {
  Scene b = build_blowup(3, default_blowup_weights(3), q(1, 100));

  for (const auto& row : b.weights) CHECK(family_invariant(b.family, row));
  CHECK(family_invariant(b.family, b.aux_weights));
  CHECK(closedness_condition(scaled_family(b)));

  MomentReport mr = check_moment(scene_omega_frame(b), b.action, b.moment);
  CHECK(mr.pass);
  IntegrabilityReport ir = integrable(scene_eps_frame(b), b.twist);
  CHECK(ir.closed);

  // type three over the vertices, where the coefficient vanishes
  for (const Point& p : b.fixed_points)
    CHECK(quotient_type(b, p) == std::pair<int, int>{0, 3});
  // type one at the interior samples, where it does not
  CHECK(quotient_type(b, b.points[6]) == std::pair<int, int>{0, 1});
  CHECK(quotient_type(b, b.points[7]) == std::pair<int, int>{0, 1});

  // rotations by either circle factor preserve both level and type
  GQ lam(q(3, 5), q(4, 5));
  for (int gen = 0; gen < 2; ++gen)
    for (const Point& p : b.points)
      CHECK(quotient_type(b, rotate_point(b, gen, lam, p)) ==
            quotient_type(b, p));

  // the generalized metric survives the deformation at interior samples
  GCS jw = scene_symplectic(b);
  GCS jc = scene_complex(b);
  Deformation df = scene_deformation(b);
  for (size_t i = 6; i < b.points.size(); ++i) {
    GKPair pair = gk_pair(jw, deform(jc, df, b.points[i]));
    for (const auto& mk : pair.minors) CHECK(mk > 0);
  }
}

TEST_CASE("hodge tables from fixed-point data") {
  Scene s = build_cpn(3, q(1, 100));
  HodgeReport hr = hodge_report(s);
  CHECK(hr.n == 3);
  CHECK(hr.total == 4);
  for (int p : {-3, -1, 1, 3}) CHECK(hodge_value(hr, p, 0) == 1);
  for (int p : {-2, 0, 2}) CHECK(hodge_value(hr, p, 0) == 0);
  CHECK(hodge_value(hr, 1, 1) == 0);
  CHECK(hodge_value(hr, 4, 0) == 0);
  CHECK(hr.h.size() == 7);
  CHECK(hr.notes.size() == 7);
  for (const auto& [key, note] : hr.notes) CHECK_FALSE(note.empty());
  CHECK_FALSE(hr.vanishing_note.empty());

  Scene b = build_blowup(3, default_blowup_weights(3), q(1, 100));
  HodgeReport hb = hodge_report(b);
  CHECK(hb.total == 6);
  std::vector<int> row;
  for (int p = -3; p <= 3; ++p) row.push_back(hodge_value(hb, p, 0));
  CHECK(row == std::vector<int>{1, 0, 2, 0, 2, 0, 1});

  Scene b4 = build_blowup(4, default_blowup_weights(4), q(1, 100));
  HodgeReport hb4 = hodge_report(b4);
  CHECK(hb4.total == 8);
  std::vector<int> row4;
  for (int p = -4; p <= 4; ++p) row4.push_back(hodge_value(hb4, p, 0));
  CHECK(row4 == std::vector<int>{1, 0, 2, 0, 2, 0, 2, 0, 1});
}

TEST_CASE("hodge tables refuse unverified hypotheses") {
  // coinciding auxiliary weights leave non-isolated fixed orbits
  Scene s = build_cpn(3, q(1, 100));
  s.aux_weights = {1, 1, 2, 4};
  s = make_scene(std::move(s));  // builders do not own the isolation check
  try {
    hodge_report(s);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisNotVerified);
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }

  Scene b = build_blowup(3, default_blowup_weights(3), q(1, 100));
  b.aux_weights = {1, 1, 1, 1, 1};
  b = make_scene(std::move(b));
  CHECK_THROWS_AS(hodge_report(b), Error);

  // a scene with no auxiliary circle carries no fixed-point argument
  try {
    hodge_report(degenerate_orbit_scene());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisNotVerified);
  }
}

TEST_CASE("scene consistency checks") {
  Scene s = build_cpn(3, q(1, 100));
  ChartPtr ch = s.chart;
  int d = 4;

  auto expect = [](Scene bad, ErrorKind kind) {
    try {
      make_scene(std::move(bad));
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == kind);
    }
  };

  Scene off = s;
  off.points.push_back(pt(ch, {GQ(1), GQ(0), GQ(0), GQ(0)}));
  expect(std::move(off), ErrorKind::NotOnLevelSet);

  Scene mismatch = s;
  mismatch.weights[0][0] = 1;  // generator still encodes weight 1/2
  expect(std::move(mismatch), ErrorKind::BadArgument);

  Scene open_b = s;
  open_b.b = PolyForm::basis(ch, (FormMask(1) << 0) | (FormMask(1) << (d + 1)),
                             Poly::var(ch, 2));
  expect(std::move(open_b), ErrorKind::NotClosed);

  Scene drifting_b = s;
  drifting_b.b = PolyForm::basis(
      ch, (FormMask(1) << 0) | (FormMask(1) << d), Poly::var(ch, 0));
  expect(std::move(drifting_b), ErrorKind::NotInvariant);

  Scene short_betti = s;
  short_betti.betti = {1, 0, 1};
  expect(std::move(short_betti), ErrorKind::BadArgument);

  Scene bad_row = s;
  bad_row.weights[0].pop_back();
  expect(std::move(bad_row), ErrorKind::BadArgument);
}
