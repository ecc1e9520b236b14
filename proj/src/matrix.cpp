#include "genformal/matrix.hpp"

namespace genformal {

std::vector<int> rref(MatQ& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    GQ inv = m(r, c).inv();
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      GQ f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(MatQ m) { return (int)rref(m).size(); }

MatQ kernel_basis(const MatQ& m) {
  MatQ e = m;
  std::vector<int> pivots = rref(e);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  int nullity = m.cols() - (int)pivots.size();
  MatQ k(m.cols(), nullity);
  int out = 0;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    k(c, out) = GQ(1);
    for (int pr = 0; pr < (int)pivots.size(); ++pr)
      k(pivots[pr], out) = -e(pr, c);
    ++out;
  }
  return k;
}

GQ det(MatQ m) {
  require(m.rows() == m.cols(), ErrorKind::NonconformableShapes, "det of non-square");
  GQ acc(1);
  int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!m(i, c).is_zero()) { p = i; break; }
    if (p < 0) return GQ(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      acc = -acc;
    }
    acc *= m(c, c);
    GQ inv = m(c, c).inv();
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      GQ f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return acc;
}

MatQ inverse(const MatQ& m) {
  require(m.rows() == m.cols(), ErrorKind::NonconformableShapes, "inverse of non-square");
  MatQ e = MatQ::hcat(m, MatQ::identity(m.rows()));
  std::vector<int> pivots = rref(e);
  require((int)pivots.size() == m.rows(), ErrorKind::BadArgument, "singular matrix");
  return e.block(0, m.cols(), m.rows(), m.cols());
}

MatQ echelon_columns(const MatQ& span) {
  MatQ t = span.transpose();
  std::vector<int> pivots = rref(t);
  MatQ out(span.rows(), (int)pivots.size());
  for (int r = 0; r < (int)pivots.size(); ++r)
    for (int c = 0; c < span.rows(); ++c) out(c, r) = t(r, c);
  return out;
}

int subspace_dim(const MatQ& span) { return rank(span); }

bool subspace_contains(const MatQ& span, const std::vector<GQ>& v) {
  MatQ vm(span.rows(), 1);
  vm.set_col(0, v);
  return rank(MatQ::hcat(span, vm)) == rank(span);
}

bool subspace_equal(const MatQ& a, const MatQ& b) {
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return false;
  return rank(MatQ::hcat(a, b)) == ra;
}

MatQ subspace_sum(const MatQ& a, const MatQ& b) {
  return echelon_columns(MatQ::hcat(a, b));
}

MatQ subspace_intersect(const MatQ& a, const MatQ& b) {
  // x = a u = b w; solve [a | -b] (u,w)^T = 0 and read off a u.
  if (a.cols() == 0 || b.cols() == 0) return MatQ(a.rows(), 0);
  MatQ k = kernel_basis(MatQ::hcat(a, -b));
  MatQ u = k.block(0, 0, a.cols(), k.cols());
  return echelon_columns(a * u);
}

MatQ subspace_preimage(const MatQ& a, const MatQ& s) {
  // a x = s y for some y; kernel of [a | -s], x-part.
  if (s.cols() == 0) return kernel_basis(a);
  MatQ k = kernel_basis(MatQ::hcat(a, -s));
  return echelon_columns(k.block(0, 0, a.cols(), k.cols()));
}

MatQ image(const MatQ& a) { return echelon_columns(a); }

std::optional<std::vector<GQ>> solve_linear(const MatQ& a, const std::vector<GQ>& b) {
  MatQ bm(a.rows(), 1);
  bm.set_col(0, b);
  MatQ e = MatQ::hcat(a, bm);
  std::vector<int> pivots = rref(e);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<GQ> x(a.cols(), GQ(0));
  for (int r = 0; r < (int)pivots.size(); ++r) x[pivots[r]] = e(r, a.cols());
  return x;
}

MatQ image_of_subspace(const MatQ& a, const MatQ& s) {
  return echelon_columns(a * s);
}

}  // namespace genformal
