#include "genformal/examples.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace genformal {

namespace {

// lambda^e for a unimodular lambda; the inverse is the conjugate.
GQ unimodular_power(const GQ& lambda, long e) {
  GQ base = e < 0 ? lambda.conj() : lambda;
  if (e < 0) e = -e;
  GQ r(1);
  for (long k = 0; k < e; ++k) r = r * base;
  return r;
}

// Weight row scaled to integers by the common denominator.
std::vector<long> integerized(const std::vector<mpq_class>& w) {
  mpz_class den(1);
  for (const auto& q : w) den = lcm(den, q.get_den());
  std::vector<long> out;
  out.reserve(w.size());
  for (const auto& q : w) {
    mpq_class scaled = q * den;
    require(scaled.get_num().fits_slong_p(), ErrorKind::BadArgument,
            "weight too large to integerize");
    out.push_back(scaled.get_num().get_si());
  }
  return out;
}

// The derivation action of the rotation field with the given weights:
// xi(f) = sum_k i w_k (z_k df/dz_k - zb_k df/dzb_k).
Poly rotation_derivation(const Poly& f, const std::vector<mpq_class>& w) {
  const ChartPtr& ch = f.chart();
  int d = ch->complex_dim();
  Poly r(ch);
  for (int k = 0; k < d; ++k) {
    GQ iw(mpq_class(0), w[k]);
    r += Poly::var(ch, k, iw) * f.wirtinger(k);
    r -= Poly::var(ch, k + d, iw) * f.wirtinger(k + d);
  }
  return r;
}

bool homogeneous_of_degree(const PolyForm& a, int deg) {
  for (const auto& [mask, c] : a.terms()) {
    (void)c;
    if (std::popcount(mask) != deg) return false;
  }
  return true;
}

// Span of the generator fields evaluated at a point, as tangent columns.
MatQ tangent_span_at(const Scene& s, const Point& at) {
  int m = s.chart->dim();
  int r = scene_rank(s);
  MatQ xi(m, r);
  for (int j = 0; j < r; ++j) {
    GenVecQ g = eval_genvec(s.action.generators[j], at);
    for (int k = 0; k < m; ++k) xi(k, j) = g.vec(k);
  }
  return xi;
}

// Tangent block of the deformed eigenbundle at a point: the columns span
// pi(L_eps) there.
MatQ pi_L_at(const Scene& s, const Point& at) {
  GCS jm = deform(scene_complex(s), scene_deformation(s), at);
  MatQ eig = eigenbundle(jm);
  return eig.block(0, 0, s.chart->dim(), eig.cols());
}

void require_on_level(const Scene& s, const Point& p) {
  for (int j = 0; j < scene_rank(s); ++j) {
    GQ v = s.moment.f[j].eval(p);
    require(v == GQ(s.level[j]), ErrorKind::NotOnLevelSet,
            "moment value " + to_string(v) + " of generator " +
                std::to_string(j) + " differs from the level " +
                to_string(s.level[j]));
  }
}

Point support_point(const ChartPtr& ch, const std::vector<int>& idx,
                    const std::vector<GQ>& vals) {
  int d = ch->complex_dim();
  std::vector<GQ> v(ch->nvars(), GQ(0));
  for (size_t t = 0; t < idx.size(); ++t) {
    v[idx[t]] = vals[t];
    v[idx[t] + d] = vals[t].conj();
  }
  return Point(ch, v);
}

// Residual auxiliary weights at a fixed orbit with the given coordinate
// support: solve the stabilizer equation on the support, subtract the
// compensating torus weights everywhere else, and demand nonzero residuals.
// Empty string when isolated, else a description of the failure.
std::string isolation_failure(const std::vector<std::vector<mpq_class>>& rows,
                              const std::vector<mpq_class>& aux,
                              const std::vector<int>& support) {
  int r = (int)rows.size();
  int d = (int)aux.size();
  if ((int)support.size() != r)
    return "support size " + std::to_string(support.size()) +
           " differs from the torus rank";
  MatQ a(r, r);
  std::vector<GQ> rhs(r);
  for (int t = 0; t < r; ++t) {
    for (int g = 0; g < r; ++g) a(t, g) = GQ(rows[g][support[t]]);
    rhs[t] = GQ(aux[support[t]]);
  }
  if (rank(a) < r) return "stabilizer solve is degenerate on the support";
  auto sol = solve_linear(a, rhs);
  if (!sol) return "orbit is not fixed by the auxiliary circle";
  for (int k = 0; k < d; ++k) {
    if (std::find(support.begin(), support.end(), k) != support.end())
      continue;
    GQ residual = GQ(aux[k]);
    for (int g = 0; g < r; ++g) residual = residual - (*sol)[g] * GQ(rows[g][k]);
    if (residual.is_zero())
      return "residual weight vanishes on coordinate " + std::to_string(k);
  }
  return "";
}

std::vector<int> point_support(const Point& p) {
  std::vector<int> out;
  for (int k = 0; k < p.chart->complex_dim(); ++k)
    if (!p.values[k].is_zero()) out.push_back(k);
  return out;
}

// The two torus weight rows of the blow-up scene on C^{n+2}.
std::vector<std::vector<mpq_class>> blowup_rows(int n) {
  int d = n + 2;
  std::vector<mpq_class> wa(d, 2), wb(d, 2);
  wa[n + 1] = 0;
  wb[n] = 0;
  wb[n + 1] = -2;
  return {wa, wb};
}

// Supports of the fixed orbits of the blow-up reduction: the level set
// meets the coordinate planes {k, n} and {k, n+1} for k < n.
std::vector<std::vector<int>> blowup_supports(int n) {
  std::vector<std::vector<int>> out;
  for (int k = 0; k < n; ++k) out.push_back({k, n});
  for (int k = 0; k < n; ++k) out.push_back({k, n + 1});
  return out;
}

// Conditions (a)-(c) on an auxiliary weight vector for the blow-up scene;
// empty string when they hold, else the failed condition.
std::string blowup_weight_failure(int n, const std::vector<mpq_class>& l) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (l[i] == l[j])
        return "condition (a): weights " + std::to_string(i) + " and " +
               std::to_string(j) + " coincide";
  if (l[0] + l[1] + l[n + 1] != l[n - 1] + l[n])
    return "condition (b): lambda_0 + lambda_1 + lambda_" +
           std::to_string(n + 1) + " != lambda_" + std::to_string(n - 1) +
           " + lambda_" + std::to_string(n);
  mpq_class gap = l[n] - l[n + 1];
  for (int i = 0; i < n; ++i)
    if (l[i] == gap)
      return "condition (c): lambda_" + std::to_string(i) +
             " equals lambda_" + std::to_string(n) + " - lambda_" +
             std::to_string(n + 1);
  return "";
}

}  // namespace

MatQ flat_kahler_form(const ChartPtr& chart) {
  require(chart && chart->is_complex(), ErrorKind::BadArgument,
          "flat Kahler form needs a complex chart");
  int d = chart->complex_dim(), m = chart->dim();
  MatQ w(m, m);
  for (int k = 0; k < d; ++k) {
    w(k, k + d) = GQ(mpq_class(0), mpq_class(-1, 2));
    w(k + d, k) = GQ(mpq_class(0), mpq_class(1, 2));
  }
  return w;
}

MatQ standard_complex_matrix(const ChartPtr& chart) {
  require(chart && chart->is_complex(), ErrorKind::BadArgument,
          "standard complex structure needs a complex chart");
  int d = chart->complex_dim();
  MatQ im = MatQ(2 * d, 2 * d);
  for (int k = 0; k < d; ++k) {
    im(k, k) = GQ::i();
    im(k + d, k + d) = -GQ::i();
  }
  return im;
}

int scene_rank(const Scene& s) { return (int)s.action.generators.size(); }

int quotient_dim(const Scene& s) {
  return s.chart->complex_dim() - scene_rank(s);
}

EpsilonFamily scaled_family(const Scene& s) {
  EpsilonFamily f = s.family;
  for (auto& [key, c] : f.coeffs) c = c * GQ(s.scale);
  return f;
}

GCS scene_complex(const Scene& s) { return from_complex(s.chart, s.cplx); }

GCS scene_symplectic(const Scene& s) {
  return from_symplectic(s.chart, s.omega);
}

Deformation scene_deformation(const Scene& s) {
  return family_deformation(scene_complex(s), scaled_family(s));
}

std::vector<GenVecP> scene_eps_frame(const Scene& s) {
  GCS jc = scene_complex(s);
  return deformed_frame(jc, family_deformation(jc, scaled_family(s)));
}

std::vector<GenVecP> scene_omega_frame(const Scene& s) {
  MatQ span = eigenbundle(scene_symplectic(s));
  std::vector<GenVecP> frame;
  frame.reserve(span.cols());
  for (int c = 0; c < span.cols(); ++c)
    frame.push_back(lift(coords_to_genvec(s.chart, span.col(c)), s.chart));
  return frame;
}

bool family_invariant(const EpsilonFamily& fam,
                      const std::vector<mpq_class>& w) {
  require(fam.chart && fam.chart->is_complex(), ErrorKind::MalformedFamily,
          "family needs a complex chart");
  require((int)w.size() == fam.chart->complex_dim(), ErrorKind::BadArgument,
          "one weight per complex coordinate");
  for (const auto& [key, f] : fam.coeffs) {
    auto [i, j] = key;
    Poly target = f * GQ(mpq_class(0), w[i] + w[j]);
    if (rotation_derivation(f, w) != target) return false;
  }
  return true;
}

bool field_in_pi_L(const Scene& s, const GenVecP& field, const Point& at) {
  check_same_chart(s.chart, at.chart);
  GenVecQ v = eval_genvec(field, at);
  std::vector<GQ> coords(s.chart->dim());
  for (int k = 0; k < s.chart->dim(); ++k) coords[k] = v.vec(k);
  return subspace_contains(pi_L_at(s, at), coords);
}

Point rotate_point(const Scene& s, int gen, const GQ& lambda,
                   const Point& at) {
  check_same_chart(s.chart, at.chart);
  require(gen >= 0 && gen < scene_rank(s), ErrorKind::BadArgument,
          "generator index out of range");
  require(lambda * lambda.conj() == GQ(1), ErrorKind::BadArgument,
          "rotation scalar must be unimodular");
  std::vector<long> w = integerized(s.weights[gen]);
  int d = s.chart->complex_dim();
  std::vector<GQ> vals = at.values;
  for (int k = 0; k < d; ++k) {
    vals[k] = unimodular_power(lambda, w[k]) * at.values[k];
    vals[k + d] = vals[k].conj();
  }
  return Point(s.chart, vals);
}

Scene make_scene(Scene s) {
  require(s.chart != nullptr, ErrorKind::BadArgument, "scene chart missing");
  GCS jw = scene_symplectic(s);
  GCS jc = scene_complex(s);
  require(type_of(jw) == 0, ErrorKind::BadArgument,
          "symplectic half must have type zero");
  (void)jc;
  if (s.family.chart == nullptr) s.family.chart = s.chart;
  (void)scene_deformation(s);  // validates the family sections
  check_same_chart(s.chart, s.twist.chart);

  int r = scene_rank(s);
  require((int)s.weights.size() == r, ErrorKind::BadArgument,
          "one weight row per generator");
  require((int)s.moment.f.size() == r && (int)s.moment.eta.size() == r,
          ErrorKind::BadArgument, "one moment entry per generator");
  require((int)s.level.size() == r, ErrorKind::BadArgument,
          "one level value per generator");
  if (r > 0)
    require(s.chart->is_complex(), ErrorKind::BadArgument,
            "weight rows need a complex chart");
  for (int j = 0; j < r; ++j) {
    require((int)s.weights[j].size() == s.chart->complex_dim(),
            ErrorKind::BadArgument, "weight row length");
    require(s.action.generators[j] == weight_generator(s.chart, s.weights[j]),
            ErrorKind::BadArgument,
            "generator " + std::to_string(j) +
                " does not match its weight row");
  }

  if (!s.b.is_zero()) {
    require(homogeneous_of_degree(s.b, 2), ErrorKind::BadArgument,
            "scene b-field must be a two-form");
    require(d(s.b).is_zero(), ErrorKind::NotClosed,
            "scene b-field is not closed");
    for (int j = 0; j < r; ++j)
      require(lie(s.action.generators[j], s.b).is_zero(),
              ErrorKind::NotInvariant, "scene b-field is not invariant");
  }

  for (const Point& p : s.points) {
    check_same_chart(s.chart, p.chart);
    require_on_level(s, p);
  }
  for (const Point& p : s.fixed_points) {
    check_same_chart(s.chart, p.chart);
    require_on_level(s, p);
  }

  if (!s.aux_weights.empty())
    require((int)s.aux_weights.size() == s.chart->complex_dim(),
            ErrorKind::BadArgument, "one auxiliary weight per coordinate");
  if (!s.betti.empty()) {
    require(r <= s.chart->complex_dim(), ErrorKind::BadArgument,
            "torus rank exceeds the chart dimension");
    require((int)s.betti.size() == 2 * quotient_dim(s) + 1,
            ErrorKind::BadArgument,
            "Betti table must cover degrees 0..2n of the quotient");
    for (int b : s.betti)
      require(b >= 0, ErrorKind::BadArgument, "negative Betti number");
  }
  return s;
}

std::pair<int, int> quotient_type(const Scene& s, const Point& m) {
  check_same_chart(s.chart, m.chart);
  int r = scene_rank(s);
  require_on_level(s, m);
  MatQ xi = tangent_span_at(s, m);
  require(rank(xi) == r, ErrorKind::NotFree,
          "generator fields are dependent at the point");
  GCS jm = deform(scene_complex(s), scene_deformation(s), m);
  int t_eps = type_of(jm);
  MatQ eig = eigenbundle(jm);
  MatQ tangent = eig.block(0, 0, s.chart->dim(), eig.cols());
  int overlap = subspace_intersect(tangent, xi).cols();
  return {0, t_eps - r + 2 * overlap};
}

Scene build_cpn(int n, const mpq_class& c) {
  require(n >= 3, ErrorKind::BadArgument, "need n >= 3");
  require(n + 1 <= 8, ErrorKind::BadArgument, "chart limit allows n <= 7");
  require(c > 0, ErrorKind::BadArgument, "scale must be positive");
  ChartPtr ch = Chart::complex_chart(n + 1);
  int d = n + 1;

  Scene s;
  s.chart = ch;
  s.omega = flat_kahler_form(ch);
  s.cplx = standard_complex_matrix(ch);
  s.family.chart = ch;
  s.family.index_set = {2, 3};
  s.family.coeffs[{2, 3}] = Poly::var(ch, 0) * Poly::var(ch, 1);
  s.scale = c;
  s.twist = zero_twist(ch);
  s.b = PolyForm::basis(ch, (FormMask(1) << 0) | (FormMask(1) << d),
                        Poly(ch, GQ::i()));

  // Weight 1/2 makes the generator the rotation field
  // (i/2) sum_k (z_k d/dz_k - zb_k d/dzb_k), Hamiltonian for
  // f = sum_k z_k zb_k / 4; the level f = 1/2 is the sphere sum |z|^2 = 2.
  std::vector<mpq_class> w(d, mpq_class(1, 2));
  s.weights = {w};
  s.action = make_action(ch, {weight_generator(ch, w)}, s.twist);
  s.moment = MomentData{{weight_moment(ch, w)}, {PolyForm(ch)}};
  s.level = {mpq_class(1, 2)};

  // Axis representatives (1+i) e_k double as the auxiliary fixed orbits;
  // all further samples keep sum |z|^2 = 2 with z0 z1 != 0.
  GQ opi(mpq_class(1), mpq_class(1));
  for (int k = 0; k < d; ++k)
    s.fixed_points.push_back(support_point(ch, {k}, {opi}));
  s.points = s.fixed_points;
  GQ u(mpq_class(3, 5), mpq_class(4, 5));
  s.points.push_back(support_point(ch, {0, 1}, {GQ(1), GQ(1)}));
  s.points.push_back(support_point(ch, {0, 1}, {GQ(1), GQ::i()}));
  s.points.push_back(support_point(ch, {0, 1}, {GQ(1), u}));
  s.points.push_back(support_point(ch, {0, 1}, {u, GQ(1)}));

  s.aux_weights.assign(d, 0);
  s.aux_weights[0] = 1;
  s.aux_weights[1] = 5;
  for (int k = 2; k < d; ++k) s.aux_weights[k] = 2 * (k - 1);

  s.betti.assign(2 * n + 1, 0);
  for (int i = 0; i <= n; ++i) s.betti[2 * i] = 1;
  s.betti_note =
      "projective n-space has one cell in each even real dimension 0..2n";

  require(family_invariant(s.family, w), ErrorKind::NotInvariant,
          "family is not invariant under the torus");
  require(family_invariant(s.family, s.aux_weights), ErrorKind::NotInvariant,
          "family is not invariant under the auxiliary circle");
  require(closedness_condition(scaled_family(s)), ErrorKind::NotClosed,
          "family fails the holomorphic-independence condition");
  return make_scene(std::move(s));
}

Scene build_blowup(int n, const std::vector<mpq_class>& lambda,
                   const mpq_class& c) {
  require(n >= 3, ErrorKind::BadArgument, "need n >= 3");
  require(n + 2 <= 8, ErrorKind::BadArgument, "chart limit allows n <= 6");
  require(c > 0, ErrorKind::BadArgument, "scale must be positive");
  require((int)lambda.size() == n + 2, ErrorKind::BadArgument,
          "need n + 2 auxiliary weights");
  std::string bad = blowup_weight_failure(n, lambda);
  require(bad.empty(), ErrorKind::InvalidWeights, bad);

  ChartPtr ch = Chart::complex_chart(n + 2);
  int d = n + 2;

  Scene s;
  s.chart = ch;
  s.omega = flat_kahler_form(ch);
  s.cplx = standard_complex_matrix(ch);
  s.family.chart = ch;
  s.family.index_set = {n - 1, n};
  s.family.coeffs[{n - 1, n}] =
      Poly::var(ch, 0) * Poly::var(ch, 1) * Poly::var(ch, n + 1);
  s.scale = c;
  s.twist = zero_twist(ch);
  s.b = PolyForm::basis(ch, (FormMask(1) << 0) | (FormMask(1) << d),
                        Poly(ch, GQ::i()));

  // Weight 2 pairs the generators with the moment scalars
  //   f_a = sum_{k <= n} z_k zb_k,   f_b = sum_{k < n} z_k zb_k - z_{n+1} zb_{n+1};
  // the reduction at level (2, 1) is the one-point blow-up.
  s.weights = blowup_rows(n);
  s.action = make_action(ch,
                         {weight_generator(ch, s.weights[0]),
                          weight_generator(ch, s.weights[1])},
                         s.twist);
  s.moment = MomentData{
      {weight_moment(ch, s.weights[0]), weight_moment(ch, s.weights[1])},
      {PolyForm(ch), PolyForm(ch)}};
  s.level = {2, 1};

  // Fixed orbits of the auxiliary circle sit over the vertices of the cut
  // simplex: supports {k, n} and {k, n+1} for k < n.
  GQ opi(mpq_class(1), mpq_class(1));
  for (int k = 0; k < n; ++k)
    s.fixed_points.push_back(support_point(ch, {k, n}, {GQ(1), GQ(1)}));
  for (int k = 0; k < n; ++k)
    s.fixed_points.push_back(support_point(ch, {k, n + 1}, {opi, GQ(1)}));
  s.points = s.fixed_points;
  // Interior samples where the deformation coefficient is nonzero.
  GQ a5(mpq_class(1, 5), mpq_class(2, 5));
  GQ b5(mpq_class(2, 5), mpq_class(4, 5));
  s.points.push_back(
      support_point(ch, {0, 1, n, n + 1}, {GQ(1), a5, b5, a5}));
  s.points.push_back(support_point(
      ch, {0, 1, 2, n, n + 1},
      {GQ(1), GQ(mpq_class(1, 2)), GQ(mpq_class(0), mpq_class(1, 2)),
       GQ(mpq_class(1, 2), mpq_class(1, 2)),
       GQ(mpq_class(1, 2), mpq_class(-1, 2))}));

  s.aux_weights = lambda;

  // One cell in each even dimension from the base, one more in each even
  // dimension 2..2n-2 from the exceptional divisor.
  s.betti.assign(2 * n + 1, 0);
  s.betti[0] = 1;
  s.betti[2 * n] = 1;
  for (int i = 1; i < n; ++i) s.betti[2 * i] = 2;
  s.betti_note =
      "one-point blow-up of projective n-space: the cells of the base plus "
      "one extra cell in each even real dimension 2..2n-2 from the "
      "exceptional divisor";

  for (const auto& row : s.weights)
    require(family_invariant(s.family, row), ErrorKind::NotInvariant,
            "family is not invariant under the torus");
  require(family_invariant(s.family, s.aux_weights), ErrorKind::NotInvariant,
          "family is not invariant under the auxiliary circle");
  require(closedness_condition(scaled_family(s)), ErrorKind::NotClosed,
          "family fails the holomorphic-independence condition");
  return make_scene(std::move(s));
}

std::vector<mpq_class> default_blowup_weights(int n) {
  require(n >= 3 && n + 2 <= 8, ErrorKind::BadArgument,
          "need 3 <= n <= 6");
  auto rows = blowup_rows(n);
  auto supports = blowup_supports(n);
  int d = n + 2;
  long top = 2 * d;
  std::vector<mpq_class> l(d, 0);
  // Lexicographic depth-first search over small positive integers; the
  // distinctness condition prunes the head, condition (b) fixes nothing, so
  // every full assignment is screened against (a)-(c) and isolation.
  std::vector<long> cur(d, 0);
  std::function<bool(int)> place = [&](int pos) -> bool {
    if (pos == d) {
      for (int k = 0; k < d; ++k) l[k] = cur[k];
      if (!blowup_weight_failure(n, l).empty()) return false;
      for (const auto& sup : supports)
        if (!isolation_failure(rows, l, sup).empty()) return false;
      return true;
    }
    for (long v = 1; v <= top; ++v) {
      if (pos < n) {
        bool dup = false;
        for (int i = 0; i < pos; ++i) dup = dup || cur[i] == v;
        if (dup) continue;
      }
      cur[pos] = v;
      if (place(pos + 1)) return true;
    }
    return false;
  };
  require(place(0), ErrorKind::InvalidWeights,
          "no admissible weight vector in the search range");
  return l;
}

HodgeReport hodge_report(const Scene& s) {
  int r = scene_rank(s);
  int nq = quotient_dim(s);
  require(!s.aux_weights.empty(), ErrorKind::HypothesisNotVerified,
          "no auxiliary circle data");
  require(!s.fixed_points.empty(), ErrorKind::HypothesisNotVerified,
          "no fixed-orbit representatives");
  require(!s.betti.empty(), ErrorKind::HypothesisNotVerified,
          "no documented Betti constants");
  require(r >= 1, ErrorKind::HypothesisNotVerified,
          "report needs a quotient torus");

  for (const Point& p : s.fixed_points) {
    std::vector<int> sup = point_support(p);
    std::string why = isolation_failure(s.weights, s.aux_weights, sup);
    require(why.empty(), ErrorKind::HypothesisNotVerified,
            "fixed orbit is not isolated: " + why);
    auto [tw, te] = quotient_type(s, p);
    (void)tw;
    require(te == nq, ErrorKind::HypothesisNotVerified,
            "reduced structure has type " + std::to_string(te) +
                " at a fixed orbit; complex type " + std::to_string(nq) +
                " is required");
  }

  HodgeReport rep;
  rep.n = nq;
  rep.betti = s.betti;
  rep.vanishing_note =
      "the auxiliary circle acts with isolated fixed points, so the "
      "cohomology is bounded by the zero-dimensional fixed set and every "
      "h^{p,q} with q != 0 vanishes";
  for (int p = -nq; p <= nq; ++p) {
    int b = s.betti[nq + p];
    if ((nq + p) % 2 != 0)
      require(b == 0, ErrorKind::HypothesisNotVerified,
              "documented Betti table breaks the even-degree pattern");
    rep.h[{p, 0}] = b;
    rep.notes[{p, 0}] =
        "h^{" + std::to_string(p) + ",0} = b_" + std::to_string(nq + p) +
        " of the quotient under the degree shift k -> n + p; " + s.betti_note;
    rep.total += b;
  }
  return rep;
}

int hodge_value(const HodgeReport& r, int p, int q) {
  auto it = r.h.find({p, q});
  return it == r.h.end() ? 0 : it->second;
}

}  // namespace genformal
