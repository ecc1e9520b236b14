#include "genformal/gcs.hpp"

namespace genformal {

namespace {

int coord_conj_index(const ChartPtr& chart, int i) {
  int m = chart->dim();
  return i < m ? chart->conj_var(i) : m + chart->conj_var(i - m);
}

}  // namespace

std::vector<GQ> conj_coords(const ChartPtr& chart, const std::vector<GQ>& v) {
  std::vector<GQ> r(v.size());
  for (int i = 0; i < (int)v.size(); ++i)
    r[coord_conj_index(chart, i)] = v[i].conj();
  return r;
}

MatQ conj_operator(const ChartPtr& chart, const MatQ& m) {
  bool full = m.rows() == 2 * chart->dim();
  MatQ r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      int ci = full ? coord_conj_index(chart, i) : chart->conj_var(i);
      int cj = full ? coord_conj_index(chart, j) : chart->conj_var(j);
      r(ci, cj) = m(i, j).conj();
    }
  return r;
}

GQ pairing_coords(const ChartPtr& chart, const std::vector<GQ>& u,
                  const std::vector<GQ>& v) {
  int m = chart->dim();
  GQ s(0);
  for (int k = 0; k < m; ++k) s += u[k] * v[m + k] + u[m + k] * v[k];
  return s * GQ::of(1, 2);
}

MatQ real_basis_of(const ChartPtr& chart, const MatQ& span) {
  MatQ conj_span(span.rows(), span.cols());
  for (int c = 0; c < span.cols(); ++c)
    conj_span.set_col(c, conj_coords(chart, span.col(c)));
  require(subspace_equal(span, conj_span), ErrorKind::BadArgument,
          "subspace is not conjugation stable");
  int target = subspace_dim(span);
  MatQ basis(span.rows(), 0);
  for (int c = 0; c < span.cols() && basis.cols() < target; ++c) {
    std::vector<GQ> b = span.col(c), cb = conj_coords(chart, b);
    for (int variant = 0; variant < 2 && basis.cols() < target; ++variant) {
      // (b + conj b)/2 and i(b - conj b)/2: real, and they reproduce b
      // itself when b is already real.
      std::vector<GQ> w(b.size());
      for (size_t i = 0; i < b.size(); ++i)
        w[i] = (variant == 0 ? b[i] + cb[i] : GQ::i() * (b[i] - cb[i])) *
               GQ::of(1, 2);
      MatQ wm(span.rows(), 1);
      wm.set_col(0, w);
      MatQ cand = MatQ::hcat(basis, wm);
      if (rank(cand) > basis.cols()) basis = cand;
    }
  }
  require(basis.cols() == target, ErrorKind::BadArgument,
          "failed to extract a real basis");
  return basis;
}

MatQ realification_basis(const ChartPtr& chart) {
  int m = chart->dim();
  if (!chart->is_complex()) return MatQ::identity(2 * m);
  int d = chart->complex_dim();
  MatQ r(2 * m, 2 * m);
  for (int half = 0; half < 2; ++half) {
    int off = half * m;  // vector block, then covector block
    for (int k = 0; k < d; ++k) {
      r(off + k, off + 2 * k) = GQ(1);
      r(off + k + d, off + 2 * k) = GQ(1);
      r(off + k, off + 2 * k + 1) = GQ::i();
      r(off + k + d, off + 2 * k + 1) = -GQ::i();
    }
  }
  return r;
}

GCS::GCS(ChartPtr chart, MatQ j) : chart_(std::move(chart)), j_(std::move(j)) {
  int m = chart_->dim();
  require(j_.rows() == 2 * m && j_.cols() == 2 * m,
          ErrorKind::NonconformableShapes, "structure matrix must be 2m x 2m");
  require((j_ * j_ + MatQ::identity(2 * m)).is_zero(),
          ErrorKind::NotSquareRootOfMinusOne, "J^2 is not -1");
  // orthogonality <Jv, Jw> = <v, w> as the matrix identity J^T Q J = Q for
  // the pairing matrix Q = (1/2)[[0, 1], [1, 0]]
  MatQ q(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    q(k, m + k) = GQ::of(1, 2);
    q(m + k, k) = GQ::of(1, 2);
  }
  require(j_.transpose() * q * j_ == q, ErrorKind::NotOrthogonal,
          "J does not preserve the pairing");
}

GCS from_complex(const ChartPtr& chart, const MatQ& i_matrix) {
  int m = chart->dim();
  require(i_matrix.rows() == m && i_matrix.cols() == m,
          ErrorKind::NonconformableShapes, "complex structure must be m x m");
  require((i_matrix * i_matrix + MatQ::identity(m)).is_zero(),
          ErrorKind::NotSquareRootOfMinusOne, "I^2 is not -1");
  MatQ j(2 * m, 2 * m);
  j.set_block(0, 0, -i_matrix);
  j.set_block(m, m, i_matrix.transpose());
  return GCS(chart, j);
}

GCS from_symplectic(const ChartPtr& chart, const MatQ& omega) {
  int m = chart->dim();
  require(omega.rows() == m && omega.cols() == m,
          ErrorKind::NonconformableShapes, "symplectic matrix must be m x m");
  require((omega + omega.transpose()).is_zero(), ErrorKind::NotSkew,
          "symplectic matrix must be skew");
  require(!det(omega).is_zero(), ErrorKind::SingularOmega,
          "symplectic form is degenerate");
  MatQ hat = omega.transpose();  // X -> iota_X omega
  MatQ j(2 * m, 2 * m);
  j.set_block(0, m, -inverse(hat));
  j.set_block(m, 0, hat);
  return GCS(chart, j);
}

GCS b_transform(const GCS& j, const MatQ& b) {
  int m = j.m();
  require(b.rows() == m && b.cols() == m, ErrorKind::NonconformableShapes,
          "B must be m x m");
  require((b + b.transpose()).is_zero(), ErrorKind::NotSkew, "B must be skew");
  MatQ eb = MatQ::identity(2 * m), ebinv = eb;
  eb.set_block(m, 0, b.transpose());
  ebinv.set_block(m, 0, -b.transpose());
  return GCS(j.chart(), eb * j.matrix() * ebinv);
}

MatQ eigenbundle(const GCS& j) {
  int m = j.m();
  MatQ l = echelon_columns(
      kernel_basis(j.matrix() - MatQ::identity(2 * m) * GQ::i()));
  require(l.cols() == m, ErrorKind::NotMaximalIsotropic,
          "eigenspace dimension is not m");
  for (int a = 0; a < m; ++a)
    for (int c = a; c < m; ++c)
      require(pairing_coords(j.chart(), l.col(a), l.col(c)).is_zero(),
              ErrorKind::NotMaximalIsotropic, "eigenspace is not isotropic");
  MatQ lbar(2 * m, m);
  for (int c = 0; c < m; ++c) lbar.set_col(c, conj_coords(j.chart(), l.col(c)));
  require(subspace_dim(subspace_intersect(l, lbar)) == 0,
          ErrorKind::NotMaximalIsotropic, "L meets its conjugate");
  return l;
}

int type_of(const GCS& j) {
  int m = j.m();
  MatQ l = eigenbundle(j);
  return m - rank(l.block(0, 0, m, m));
}

GenVecQ coords_to_genvec(const ChartPtr& chart, const std::vector<GQ>& v) {
  GenVecQ g(chart);
  g.comps = v;
  return g;
}

Deformation make_deformation(const GCS& j, std::vector<DeformationTerm> terms) {
  MatQ l = eigenbundle(j);
  int m = j.m();
  std::vector<GenVecP> lbar_frame;
  for (int c = 0; c < m; ++c)
    lbar_frame.push_back(
        lift(coords_to_genvec(j.chart(), conj_coords(j.chart(), l.col(c))),
             j.chart()));
  auto in_lbar = [&](const GenVecP& s) {
    // conj(L) is maximal isotropic, so membership is vanishing pairing
    // against the whole conjugate frame.
    for (const auto& f : lbar_frame)
      if (!pairing(s, f).is_zero()) return false;
    return true;
  };
  for (const auto& t : terms) {
    check_same_chart(j.chart(), t.a.chart);
    check_same_chart(j.chart(), t.b.chart);
    require(in_lbar(t.a) && in_lbar(t.b), ErrorKind::BadArgument,
            "deformation sections must lie in the conjugate eigenbundle");
  }
  return Deformation{j.chart(), std::move(terms)};
}

namespace {

// iota_Y (a ^ b) = a(Y) b - b(Y) a with a(Y) = 2<Y, a>.
GenVecP contract_pair(const GenVecP& y, const DeformationTerm& t) {
  Poly ay = pairing(y, t.a) * GQ(2);
  Poly by = pairing(y, t.b) * GQ(2);
  return t.b.scaled(ay * t.coeff) - t.a.scaled(by * t.coeff);
}

}  // namespace

std::vector<GenVecP> deformed_frame(const GCS& j, const Deformation& eps) {
  check_same_chart(j.chart(), eps.chart);
  MatQ l = eigenbundle(j);
  std::vector<GenVecP> frame;
  for (int c = 0; c < j.m(); ++c) {
    GenVecP y = lift(coords_to_genvec(j.chart(), l.col(c)), j.chart());
    GenVecP s = y;
    for (const auto& t : eps.terms) s = s + contract_pair(y, t);
    frame.push_back(s);
  }
  return frame;
}

GCS from_frame(const ChartPtr& chart, const MatQ& frame) {
  int m = chart->dim();
  require(frame.rows() == 2 * m && frame.cols() == m,
          ErrorKind::NonconformableShapes, "frame must be 2m x m");
  MatQ c(2 * m, 2 * m);
  c.set_block(0, 0, frame);
  for (int k = 0; k < m; ++k)
    c.set_col(m + k, conj_coords(chart, frame.col(k)));
  require(!det(c).is_zero(), ErrorKind::NotGeneralizedComplex,
          "frame and conjugate frame do not span");
  MatQ d(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    d(k, k) = GQ::i();
    d(m + k, m + k) = -GQ::i();
  }
  return GCS(chart, c * d * inverse(c));
}

GCS deform(const GCS& j, const Deformation& eps,
           const std::optional<Point>& at) {
  std::vector<GenVecP> frame = deformed_frame(j, eps);
  int m = j.m();
  MatQ f(2 * m, m);
  for (int c = 0; c < m; ++c) {
    const GenVecP& s = frame[c];
    for (int r = 0; r < 2 * m; ++r) {
      const Poly& e = s.comps[r];
      if (at) {
        f(r, c) = e.eval(*at);
      } else {
        require(e.is_constant(), ErrorKind::PolynomialEntries,
                "deformed frame varies; supply a point");
        f(r, c) = e.constant_term();
      }
    }
  }
  return from_frame(j.chart(), f);
}

GKPair gk_pair(const GCS& j1, const GCS& j2) {
  check_same_chart(j1.chart(), j2.chart());
  const MatQ &a = j1.matrix(), &b = j2.matrix();
  require(a * b == b * a, ErrorKind::NotCommuting,
          "structures do not commute");
  MatQ g = -(a * b);
  int m = j1.m();
  MatQ q(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    q(k, m + k) = GQ::of(1, 2);
    q(m + k, k) = GQ::of(1, 2);
  }
  MatQ r = realification_basis(j1.chart());
  // gram_ij = <G r_i, r_j> over the real basis; must be real symmetric
  MatQ gram = r.transpose() * g.transpose() * q * r;
  std::vector<mpq_class> minors;
  for (int k = 1; k <= 2 * m; ++k) {
    MatQ lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int jj = 0; jj < k; ++jj) {
        const GQ& e = gram(i, jj);
        require(e.is_real(), ErrorKind::NotPositiveDefinite,
                "metric Gram matrix has a non-real entry");
        require(gram(jj, i) == e, ErrorKind::NotPositiveDefinite,
                "metric Gram matrix is not symmetric");
        lead(i, jj) = e;
      }
    GQ mk = det(lead);
    require(mk.is_real() && mk.re > 0, ErrorKind::NotPositiveDefinite,
            "leading principal minor " + std::to_string(k) +
                " is not positive: " + to_string(mk));
    minors.push_back(mk.re);
  }
  return GKPair{j1, j2, g, gram, minors};
}

std::map<std::pair<int, int>, MatQ> pq_decomposition(const GKPair& pair) {
  const ChartPtr& chart = pair.j1.chart();
  MatQ r1 = materialize_spinor_op(chart, pair.j1.rho());
  MatQ r2 = materialize_spinor_op(chart, pair.j2.rho());
  require(r1 * r2 == r2 * r1, ErrorKind::NotCommuting,
          "spinor actions do not commute");
  int n = pair.j1.n(), total = 0;
  std::map<std::pair<int, int>, MatQ> out;
  std::map<int, MatQ> e1, e2;
  for (int k = -n; k <= n; ++k) {
    e1[k] = spinor_eigenspace(r1, grading_eigenvalue(k));
    e2[k] = spinor_eigenspace(r2, grading_eigenvalue(k));
  }
  for (int p = -n; p <= n; ++p)
    for (int q = -n; q <= n; ++q) {
      MatQ joint = subspace_intersect(e1[p], e2[q]);
      if (joint.cols() == 0) continue;
      total += joint.cols();
      out[{p, q}] = joint;
    }
  require(total == (1 << chart->dim()), ErrorKind::NotGraded,
          "joint eigenspaces do not fill the spinor space");
  return out;
}

GCS restrict_dirac(const GCS& j, const MatQ& w) {
  const ChartPtr& chart = j.chart();
  int m = j.m(), k = w.cols();
  require(w.rows() == m && k >= 1, ErrorKind::NonconformableShapes,
          "subspace basis must be m x k");
  require(rank(w) == k, ErrorKind::BadArgument,
          "subspace basis columns are dependent");
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < m; ++r)
      require(w(r, c) == w(chart->conj_var(r), c).conj(),
              ErrorKind::BadArgument, "subspace basis must be real");
  MatQ l = eigenbundle(j);
  // sections of L with vector part in W
  MatQ constraint(2 * m, k + m);
  constraint.set_block(0, 0, w);
  constraint.set_block(m, k, MatQ::identity(m));
  MatQ lw_up = subspace_intersect(l, constraint);
  // map X + xi to (coords of X in w, xi restricted to W)
  MatQ lw(2 * k, lw_up.cols());
  for (int c = 0; c < lw_up.cols(); ++c) {
    std::vector<GQ> u = lw_up.col(c);
    std::vector<GQ> x(u.begin(), u.begin() + m), xi(u.begin() + m, u.end());
    auto coords = solve_linear(w, x);
    require(coords.has_value(), ErrorKind::BadArgument,
            "vector part escapes the subspace");
    for (int r = 0; r < k; ++r) {
      lw(r, c) = (*coords)[r];
      GQ restr(0);
      for (int i = 0; i < m; ++i) restr += xi[i] * w(i, r);
      lw(k + r, c) = restr;
    }
  }
  lw = echelon_columns(lw);
  require(lw.cols() == k, ErrorKind::NotMaximalIsotropic,
          "restricted bundle has wrong dimension");
  // the restriction is generalized complex iff L_W stays transverse to its
  // conjugate (the sub-chart is real, so conjugation is entrywise)
  MatQ lw_conj(2 * k, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < 2 * k; ++r) lw_conj(r, c) = lw(r, c).conj();
  require(subspace_dim(subspace_intersect(lw, lw_conj)) == 0,
          ErrorKind::NotGeneralizedComplexSubspace,
          "restricted bundle meets its conjugate");
  auto sub = Chart::real_chart(k);
  return from_frame(sub, lw);
}

SplitResult weight_split(const GCS& j, const std::vector<MatQ>& generators) {
  const ChartPtr& chart = j.chart();
  int m = j.m();
  require(!generators.empty(), ErrorKind::BadArgument, "no generators");
  MatQ fixed = MatQ::identity(m);
  MatQ moving(m, 0);
  for (const auto& g : generators) {
    require(g.rows() == m && g.cols() == m, ErrorKind::NonconformableShapes,
            "generator must be m x m");
    require(conj_operator(chart, g) == g, ErrorKind::BadArgument,
            "generator is not a real operator");
    require(!det(g).is_zero(), ErrorKind::BadArgument, "generator is singular");
    for (const auto& h : generators)
      require(g * h == h * g, ErrorKind::NotCommuting,
              "generators do not commute");
    // extended action diag(g, g^{-T}) preserves the pairing automatically
    MatQ ext = MatQ::identity(2 * m);
    ext.set_block(0, 0, g);
    ext.set_block(m, m, inverse(g).transpose());
    require(ext * j.matrix() == j.matrix() * ext, ErrorKind::NotCommuting,
            "generator does not preserve the structure");
    MatQ shifted = g - MatQ::identity(m);
    fixed = subspace_intersect(fixed, kernel_basis(shifted));
    moving = subspace_sum(moving, image(shifted));
  }
  require(subspace_dim(subspace_intersect(fixed, moving)) == 0 &&
              subspace_dim(fixed) + subspace_dim(moving) == m,
          ErrorKind::HypothesisNotVerified,
          "fixed and moving directions do not split V");
  // Ann(N) in V*: kernel of the transposed moving basis
  MatQ ann = moving.cols() == 0 ? MatQ::identity(m)
                                : kernel_basis(moving.transpose());
  // J must preserve V1 + Ann(N) inside V + V*
  MatQ e(2 * m, fixed.cols() + ann.cols());
  e.set_block(0, 0, fixed);
  e.set_block(m, fixed.cols(), ann);
  MatQ je = image_of_subspace(j.matrix(), e);
  require(subspace_equal(je, echelon_columns(e)), ErrorKind::NotInvariant,
          "structure does not preserve the fixed summand");
  MatQ w = real_basis_of(chart, fixed);
  return SplitResult{fixed, moving, ann, restrict_dirac(j, w)};
}

}  // namespace genformal
