#pragma once

#include <random>

#include "genformal/matrix.hpp"
#include "genformal/poly.hpp"
#include "genformal/spinor.hpp"

namespace genformal::testutil {

// Deterministic generator for property tests: everything derives from the
// fixed seed passed by the test, so failures are reproducible.
struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}

  long uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(g);
  }
  GQ gq() {
    GQ x = GQ::of(uniform(-4, 4), uniform(1, 3));
    if (uniform(0, 1)) x = x + GQ::i() * GQ::of(uniform(-4, 4), uniform(1, 3));
    return x;
  }
  GQ gq_nonzero() {
    for (;;) {
      GQ x = gq();
      if (!x.is_zero()) return x;
    }
  }
  Poly poly(const ChartPtr& chart, int terms = 3, int deg = 2) {
    Poly p(chart);
    for (int t = 0; t < terms; ++t) {
      Mono m(chart->nvars(), 0);
      for (int k = 0; k < chart->nvars(); ++k)
        m[k] = (std::uint8_t)uniform(0, deg);
      p.add_term(m, gq());
    }
    return p;
  }
  Point point(const ChartPtr& chart) {
    std::vector<GQ> v(chart->nvars());
    if (chart->is_complex()) {
      int d = chart->complex_dim();
      for (int k = 0; k < d; ++k) {
        v[k] = gq();
        v[k + d] = v[k].conj();
      }
    } else {
      for (auto& x : v) x = GQ(mpq_class(uniform(-4, 4)) / uniform(1, 3));
    }
    return Point(chart, v);
  }
  FormQ form(const ChartPtr& chart, int terms = 4) {
    FormQ f(chart);
    FormMask top = (FormMask(1) << chart->dim()) - 1;
    for (int t = 0; t < terms; ++t)
      f.add_term((FormMask)uniform(0, (long)top), gq());
    return f;
  }
  GenVecQ genvec(const ChartPtr& chart) {
    GenVecQ v(chart);
    for (auto& c : v.comps) c = gq();
    return v;
  }
  PolyForm polyform(const ChartPtr& chart, int terms = 3, int pterms = 2,
                    int deg = 2) {
    PolyForm f(chart);
    FormMask top = (FormMask(1) << chart->dim()) - 1;
    for (int t = 0; t < terms; ++t)
      f.add_term((FormMask)uniform(0, (long)top), poly(chart, pterms, deg));
    return f;
  }
  PolyForm polyform_degree(const ChartPtr& chart, int degree, int pterms = 2,
                           int deg = 2) {
    PolyForm f(chart);
    FormMask top = (FormMask(1) << chart->dim()) - 1;
    for (FormMask mask = 0; mask <= top; ++mask)
      if (std::popcount(mask) == degree && uniform(0, 1))
        f.add_term(mask, poly(chart, pterms, deg));
    return f;
  }
  GenVecP vec_field(const ChartPtr& chart, int pterms = 2, int deg = 2) {
    GenVecP v(chart);
    for (int k = 0; k < chart->dim(); ++k) v.vec(k) = poly(chart, pterms, deg);
    return v;
  }
  GenVecP section(const ChartPtr& chart, int pterms = 2, int deg = 2) {
    GenVecP v(chart);
    for (auto& c : v.comps) c = poly(chart, pterms, deg);
    return v;
  }
  MatQ mat(int rows, int cols) {
    MatQ m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = gq();
    return m;
  }
  // Random element of so(V + V*): blocks [[A, P], [B, -A^T]] with P, B skew.
  MatQ skew_operator(const ChartPtr& chart) {
    int n = chart->dim();
    MatQ a = mat(n, n), p(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        p(i, j) = gq();
        p(j, i) = -p(i, j);
        b(i, j) = gq();
        b(j, i) = -b(i, j);
      }
    MatQ m(2 * n, 2 * n);
    m.set_block(0, 0, a);
    m.set_block(0, n, p);
    m.set_block(n, 0, b);
    m.set_block(n, n, -a.transpose());
    return m;
  }
};

inline GenVecQ apply_matrix(const MatQ& m, const GenVecQ& v) {
  GenVecQ r(v.chart);
  r.comps = m.apply(v.comps);
  return r;
}

}  // namespace genformal::testutil
