#include "genformal/doublecomplex.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>

namespace genformal {

namespace {

std::string at(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

int map_dim(const std::map<BiDeg, int>& dims, int i, int j) {
  auto it = dims.find({i, j});
  return it == dims.end() ? 0 : it->second;
}

MatQ block_or_zero(const std::map<BiDeg, MatQ>& blocks,
                   const std::map<BiDeg, int>& dims, int i, int j, int di,
                   int dj) {
  auto it = blocks.find({i, j});
  if (it != blocks.end()) return it->second;
  return MatQ(map_dim(dims, i + di, j + dj), map_dim(dims, i, j));
}

void check_block_shapes(const std::map<BiDeg, MatQ>& blocks,
                        const std::map<BiDeg, int>& dims, int di, int dj,
                        const char* name) {
  for (const auto& [src, m] : blocks) {
    auto [i, j] = src;
    require(m.cols() == map_dim(dims, i, j), ErrorKind::BadArgument,
            std::string(name) + " block at " + at(i, j) +
                " has wrong column count");
    require(m.rows() == map_dim(dims, i + di, j + dj), ErrorKind::BadArgument,
            std::string(name) + " block at " + at(i, j) +
                " has wrong row count");
  }
}

// Coordinates of the columns of m in the (independent) columns of basis.
MatQ coordinates_in(const MatQ& basis, const MatQ& m, const char* what) {
  MatQ out(basis.cols(), m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    auto sol = solve_linear(basis, m.col(c));
    require(sol.has_value(), ErrorKind::InvariantViolation, what);
    out.set_col(c, *sol);
  }
  return out;
}

}  // namespace

void validate_double_complex(const FiniteDoubleComplex& k) {
  for (const auto& [ij, n] : k.dims)
    require(n > 0, ErrorKind::BadArgument,
            "piece at " + at(ij.first, ij.second) + " has non-positive dimension");
  check_block_shapes(k.d, k.dims, 0, 1, "d");
  check_block_shapes(k.dp, k.dims, 1, 0, "d'");
  if (k.has_delta) {
    check_block_shapes(k.delta, k.dims, 0, -1, "delta");
  } else {
    require(k.delta.empty(), ErrorKind::BadArgument,
            "delta blocks supplied without the delta flag");
  }
  for (const auto& [ij, n] : k.dims) {
    auto [i, j] = ij;
    require((d_block(k, i, j + 1) * d_block(k, i, j)).is_zero(),
            ErrorKind::InvariantViolation, "d^2 != 0 at " + at(i, j));
    require((dp_block(k, i + 1, j) * dp_block(k, i, j)).is_zero(),
            ErrorKind::InvariantViolation, "d'^2 != 0 at " + at(i, j));
    require((dp_block(k, i, j + 1) * d_block(k, i, j) +
             d_block(k, i + 1, j) * dp_block(k, i, j))
                .is_zero(),
            ErrorKind::InvariantViolation, "dd' + d'd != 0 at " + at(i, j));
    if (k.has_delta) {
      require((delta_block(k, i, j - 1) * delta_block(k, i, j)).is_zero(),
              ErrorKind::InvariantViolation, "delta^2 != 0 at " + at(i, j));
      require((d_block(k, i, j - 1) * delta_block(k, i, j) +
               delta_block(k, i, j + 1) * d_block(k, i, j))
                  .is_zero(),
              ErrorKind::InvariantViolation,
              "d delta + delta d != 0 at " + at(i, j));
      require((dp_block(k, i, j - 1) * delta_block(k, i, j) +
               delta_block(k, i + 1, j) * dp_block(k, i, j))
                  .is_zero(),
              ErrorKind::InvariantViolation,
              "d' delta + delta d' != 0 at " + at(i, j));
    }
  }
}

FiniteDoubleComplex make_double_complex(std::map<BiDeg, int> dims,
                                        std::map<BiDeg, MatQ> d,
                                        std::map<BiDeg, MatQ> dp) {
  FiniteDoubleComplex k;
  k.dims = std::move(dims);
  k.d = std::move(d);
  k.dp = std::move(dp);
  k.has_delta = false;
  validate_double_complex(k);
  return k;
}

FiniteDoubleComplex make_double_complex(std::map<BiDeg, int> dims,
                                        std::map<BiDeg, MatQ> d,
                                        std::map<BiDeg, MatQ> dp,
                                        std::map<BiDeg, MatQ> delta) {
  FiniteDoubleComplex k;
  k.dims = std::move(dims);
  k.d = std::move(d);
  k.dp = std::move(dp);
  k.delta = std::move(delta);
  k.has_delta = true;
  validate_double_complex(k);
  return k;
}

int dim_at(const FiniteDoubleComplex& k, int i, int j) {
  return map_dim(k.dims, i, j);
}

MatQ d_block(const FiniteDoubleComplex& k, int i, int j) {
  return block_or_zero(k.d, k.dims, i, j, 0, 1);
}

MatQ dp_block(const FiniteDoubleComplex& k, int i, int j) {
  return block_or_zero(k.dp, k.dims, i, j, 1, 0);
}

MatQ delta_block(const FiniteDoubleComplex& k, int i, int j) {
  return block_or_zero(k.delta, k.dims, i, j, 0, -1);
}

TotalLayout total_layout(const FiniteDoubleComplex& k, int n) {
  TotalLayout l;
  for (const auto& [ij, dim] : k.dims) {
    if (ij.first + ij.second != n) continue;
    l.offset[ij] = l.total;
    l.blocks.push_back(ij);
    l.total += dim;
  }
  return l;
}

MatQ total_differential(const FiniteDoubleComplex& k, int n) {
  TotalLayout src = total_layout(k, n);
  TotalLayout dst = total_layout(k, n + 1);
  MatQ m(dst.total, src.total);
  for (const BiDeg& ij : src.blocks) {
    auto [i, j] = ij;
    if (auto it = dst.offset.find({i, j + 1}); it != dst.offset.end())
      m.set_block(it->second, src.offset.at(ij), d_block(k, i, j));
    if (auto it = dst.offset.find({i + 1, j}); it != dst.offset.end())
      m.set_block(it->second, src.offset.at(ij), dp_block(k, i, j));
  }
  return m;
}

MatQ total_delta(const FiniteDoubleComplex& k, int n) {
  TotalLayout src = total_layout(k, n);
  TotalLayout dst = total_layout(k, n - 1);
  MatQ m(dst.total, src.total);
  for (const BiDeg& ij : src.blocks) {
    auto [i, j] = ij;
    if (auto it = dst.offset.find({i, j - 1}); it != dst.offset.end())
      m.set_block(it->second, src.offset.at(ij), delta_block(k, i, j));
  }
  return m;
}

std::map<int, int> total_cohomology(const FiniteDoubleComplex& k) {
  validate_double_complex(k);
  std::map<int, int> h;
  if (k.dims.empty()) return h;
  int nmin = 0, nmax = 0;
  bool first = true;
  for (const auto& [ij, dim] : k.dims) {
    int n = ij.first + ij.second;
    nmin = first ? n : std::min(nmin, n);
    nmax = first ? n : std::max(nmax, n);
    first = false;
  }
  std::map<int, int> rank_d;
  for (int n = nmin - 1; n <= nmax; ++n)
    rank_d[n] = rank(total_differential(k, n));
  for (int n = nmin; n <= nmax; ++n) {
    int total = total_layout(k, n).total;
    if (total == 0) continue;
    h[n] = total - rank_d[n] - rank_d[n - 1];
  }
  return h;
}

SpectralPages spectral_pages(const FiniteDoubleComplex& k, int max_r) {
  require(max_r >= 0, ErrorKind::BadArgument, "negative page index");
  validate_double_complex(k);
  SpectralPages out;
  out.pages.resize(max_r + 1);
  for (const auto& [ij, dim] : k.dims) out.pages[0][ij] = dim;
  if (max_r == 0 || k.dims.empty()) return out;

  // Per total degree: layout, D, and the coordinate spans of F^p.
  std::map<int, TotalLayout> layouts;
  std::map<int, MatQ> bigd;
  for (const auto& [ij, dim] : k.dims) {
    int n = ij.first + ij.second;
    for (int m = n - 1; m <= n + 1; ++m)
      if (!layouts.count(m)) layouts[m] = total_layout(k, m);
  }
  for (const auto& [n, l] : layouts) bigd[n] = total_differential(k, n);

  auto filtration = [&](int n, int p) {
    const TotalLayout& l = layouts.at(n);
    std::vector<std::pair<int, int>> ranges;  // offset, dim
    int cols = 0;
    for (const BiDeg& ij : l.blocks) {
      if (ij.first < p) continue;
      int dim = k.dims.at(ij);
      ranges.push_back({l.offset.at(ij), dim});
      cols += dim;
    }
    MatQ f(l.total, cols);
    int c = 0;
    for (auto [off, dim] : ranges)
      for (int t = 0; t < dim; ++t) f(off + t, c++) = GQ(1);
    return f;
  };
  // Z_s at first index a, total degree n: F^a with D landing in F^{a+s}.
  auto cycles = [&](int n, int a, int s) {
    if (!layouts.count(n) || layouts.at(n).total == 0)
      return MatQ(layouts.count(n) ? layouts.at(n).total : 0, 0);
    MatQ pre = subspace_preimage(bigd.at(n), filtration(n + 1, a + s));
    return subspace_intersect(filtration(n, a), pre);
  };

  for (int r = 1; r <= max_r; ++r) {
    for (const auto& [pq, dim] : k.dims) {
      auto [p, q] = pq;
      int n = p + q;
      MatQ zr = cycles(n, p, r);
      MatQ z_up = cycles(n, p + 1, r - 1);
      MatQ z_down = cycles(n - 1, p - r + 1, r - 1);
      MatQ boundaries = image_of_subspace(bigd.at(n - 1), z_down);
      int e = subspace_dim(zr) -
              subspace_dim(subspace_sum(z_up, boundaries));
      if (e > 0) out.pages[r][pq] = e;
    }
  }
  return out;
}

int stable_page(const FiniteDoubleComplex& k) {
  if (k.dims.empty()) return 1;
  int imin = k.dims.begin()->first.first, imax = imin;
  for (const auto& [ij, dim] : k.dims) {
    imin = std::min(imin, ij.first);
    imax = std::max(imax, ij.first);
  }
  return std::max(1, imax - imin + 1);
}

bool degenerates_at_e1(const FiniteDoubleComplex& k) {
  int stable = stable_page(k);
  SpectralPages sp = spectral_pages(k, stable);
  return sp.pages[1] == sp.pages[stable];
}

DdeltaReport check_Ddelta(const FiniteDoubleComplex& k) {
  validate_double_complex(k);
  require(k.has_delta, ErrorKind::BadArgument,
          "complex carries no delta differential");
  DdeltaReport rep;
  rep.hypothesis_a = true;
  for (const auto& [ij, dim] : k.dims) {
    auto [i, j] = ij;
    MatQ d_in = d_block(k, i, j - 1);
    MatQ dl = delta_block(k, i, j);
    MatQ im_d_ker_delta = subspace_intersect(image(d_in), kernel_basis(dl));
    MatQ ker_d_im_delta = subspace_intersect(
        kernel_basis(d_block(k, i, j)), image(delta_block(k, i, j + 1)));
    MatQ im_d_delta = image(d_in * dl);
    if (!subspace_equal(im_d_ker_delta, im_d_delta) ||
        !subspace_equal(ker_d_im_delta, im_d_delta)) {
      if (rep.hypothesis_a) rep.failed_bidegree = ij;
      rep.hypothesis_a = false;
    }
  }
  rep.hypothesis_b = degenerates_at_e1(k);
  rep.conclusion = true;
  if (!k.dims.empty()) {
    int nmin = 0, nmax = 0;
    bool first = true;
    for (const auto& [ij, dim] : k.dims) {
      int n = ij.first + ij.second;
      nmin = first ? n : std::min(nmin, n);
      nmax = first ? n : std::max(nmax, n);
      first = false;
    }
    for (int n = nmin; n <= nmax; ++n) {
      if (total_layout(k, n).total == 0) continue;
      MatQ d_prev = total_differential(k, n - 1);
      MatQ dl = total_delta(k, n);
      MatQ lhs = subspace_intersect(image(d_prev), kernel_basis(dl));
      MatQ rhs = image(d_prev * dl);
      rep.lhs_dims[n] = subspace_dim(lhs);
      rep.rhs_dims[n] = subspace_dim(rhs);
      if (!subspace_equal(lhs, rhs)) {
        if (rep.conclusion) rep.failed_degree = n;
        rep.conclusion = false;
      }
    }
  }
  rep.pass = rep.hypothesis_a && rep.hypothesis_b && rep.conclusion;
  return rep;
}

int gdim_at(const GradedComplex& c, int n) {
  auto it = c.dims.find(n);
  return it == c.dims.end() ? 0 : it->second;
}

MatQ gd_block(const GradedComplex& c, int n) {
  auto it = c.d.find(n);
  if (it != c.d.end()) return it->second;
  return MatQ(gdim_at(c, n + 1), gdim_at(c, n));
}

GradedComplex make_graded_complex(std::map<int, int> dims,
                                  std::map<int, MatQ> d) {
  GradedComplex c;
  c.dims = std::move(dims);
  c.d = std::move(d);
  for (const auto& [n, dim] : c.dims)
    require(dim > 0, ErrorKind::BadArgument,
            "piece at degree " + std::to_string(n) +
                " has non-positive dimension");
  for (const auto& [n, m] : c.d) {
    require(m.cols() == gdim_at(c, n), ErrorKind::BadArgument,
            "differential block at degree " + std::to_string(n) +
                " has wrong column count");
    require(m.rows() == gdim_at(c, n + 1), ErrorKind::BadArgument,
            "differential block at degree " + std::to_string(n) +
                " has wrong row count");
  }
  for (const auto& [n, dim] : c.dims)
    require((gd_block(c, n + 1) * gd_block(c, n)).is_zero(),
            ErrorKind::InvariantViolation,
            "differential does not square to zero at degree " +
                std::to_string(n));
  return c;
}

std::map<int, int> cohomology_dims(const GradedComplex& c) {
  std::map<int, int> h;
  for (const auto& [n, dim] : c.dims) {
    int v = dim - rank(gd_block(c, n)) - rank(gd_block(c, n - 1));
    if (v > 0) h[n] = v;
  }
  return h;
}

MatQ f_block(const ChainMap& m, int n) {
  auto it = m.f.find(n);
  if (it != m.f.end()) return it->second;
  return MatQ(gdim_at(m.dst, n), gdim_at(m.src, n));
}

ChainMap make_chain_map(GradedComplex src, GradedComplex dst,
                        std::map<int, MatQ> f) {
  ChainMap m;
  m.src = std::move(src);
  m.dst = std::move(dst);
  m.f = std::move(f);
  for (const auto& [n, blk] : m.f) {
    require(blk.cols() == gdim_at(m.src, n), ErrorKind::BadArgument,
            "map block at degree " + std::to_string(n) +
                " has wrong column count");
    require(blk.rows() == gdim_at(m.dst, n), ErrorKind::BadArgument,
            "map block at degree " + std::to_string(n) +
                " has wrong row count");
  }
  std::map<int, bool> degrees;
  for (const auto& [n, dim] : m.src.dims) degrees[n] = true;
  for (const auto& [n, dim] : m.dst.dims) degrees[n] = true;
  for (const auto& [n, used] : degrees)
    require((f_block(m, n + 1) * gd_block(m.src, n)) ==
                (gd_block(m.dst, n) * f_block(m, n)),
            ErrorKind::NotChainMap,
            "map does not intertwine the differentials at degree " +
                std::to_string(n));
  return m;
}

QuasiIsoReport quasi_iso_check(const ChainMap& m) {
  QuasiIsoReport rep;
  rep.src_cohomology = cohomology_dims(m.src);
  rep.dst_cohomology = cohomology_dims(m.dst);
  rep.pass = true;
  std::map<int, bool> degrees;
  for (const auto& [n, dim] : m.src.dims) degrees[n] = true;
  for (const auto& [n, dim] : m.dst.dims) degrees[n] = true;
  for (const auto& [n, used] : degrees) {
    int h_src = gdim_at(m.src, n) - rank(gd_block(m.src, n)) -
                rank(gd_block(m.src, n - 1));
    int h_dst = gdim_at(m.dst, n) - rank(gd_block(m.dst, n)) -
                rank(gd_block(m.dst, n - 1));
    MatQ cycles = kernel_basis(gd_block(m.src, n));
    MatQ mapped = f_block(m, n) * cycles;
    MatQ boundaries = image(gd_block(m.dst, n - 1));
    int induced = subspace_dim(subspace_sum(image(mapped), boundaries)) -
                  subspace_dim(boundaries);
    if (h_src != h_dst || induced != h_src) {
      if (rep.pass) rep.failed_degree = n;
      rep.pass = false;
    }
  }
  return rep;
}

DelDiagram del_diagram(const FiniteDoubleComplex& k) {
  validate_double_complex(k);
  // Level layout: for each second index j, the blocks (i, j) by ascending i.
  std::map<int, std::map<int, int>> offset;  // j -> (i -> offset)
  std::map<int, int> level_dim;
  for (const auto& [ij, dim] : k.dims) {
    auto [i, j] = ij;
    offset[j][i] = level_dim[j];
    level_dim[j] += dim;
  }
  auto level_total = [&](int j) {
    auto it = level_dim.find(j);
    return it == level_dim.end() ? 0 : it->second;
  };
  // Vertical differential C^j -> C^{j+1} and the endomorphism d' of C^j.
  auto vertical = [&](int j) {
    MatQ m(level_total(j + 1), level_total(j));
    if (auto it = offset.find(j); it != offset.end())
      for (const auto& [i, off] : it->second) {
        auto up = offset.find(j + 1);
        if (up == offset.end()) continue;
        auto t = up->second.find(i);
        if (t != up->second.end())
          m.set_block(t->second, off, d_block(k, i, j));
      }
    return m;
  };
  auto inner = [&](int j) {
    int n = level_total(j);
    MatQ m(n, n);
    if (auto it = offset.find(j); it != offset.end())
      for (const auto& [i, off] : it->second) {
        auto t = it->second.find(i + 1);
        if (t != it->second.end())
          m.set_block(t->second, off, dp_block(k, i, j));
      }
    return m;
  };

  std::map<int, int> full_dims, sub_dims, quot_dims;
  std::map<int, MatQ> full_d, sub_d, quot_d, inc_f, proj_f;
  std::map<int, MatQ> ker_basis, mixed_basis;  // per level
  std::map<int, int> quot_rank;                // representative count

  for (const auto& [j, n] : level_dim) {
    if (n > 0) full_dims[j] = n;
    MatQ p = inner(j);
    MatQ z = kernel_basis(p);
    ker_basis[j] = z;
    if (z.cols() > 0) sub_dims[j] = z.cols();
    MatQ b = image(p);
    // Greedily extend a basis of im d' to one of ker d'; the added columns
    // represent the d'-cohomology.
    MatQ reps(n, 0);
    MatQ span = b;
    for (int c = 0; c < z.cols(); ++c) {
      if (subspace_contains(span, z.col(c))) continue;
      MatQ one(n, 1);
      one.set_col(0, z.col(c));
      reps = MatQ::hcat(reps, one);
      span = subspace_sum(span, one);
    }
    mixed_basis[j] = MatQ::hcat(reps, b);
    quot_rank[j] = reps.cols();
    if (reps.cols() > 0) quot_dims[j] = reps.cols();
  }

  for (const auto& [j, n] : level_dim) {
    MatQ dv = vertical(j);
    if (n > 0) full_d[j] = dv;
    const MatQ& z = ker_basis[j];
    int z_up_cols =
        ker_basis.count(j + 1) ? ker_basis[j + 1].cols() : 0;
    if (z.cols() > 0) {
      MatQ moved = dv * z;
      MatQ s(z_up_cols, z.cols());
      if (z_up_cols > 0)
        s = coordinates_in(ker_basis[j + 1], moved,
                           "vertical differential leaves ker d'");
      else
        require(moved.is_zero(), ErrorKind::InvariantViolation,
                "vertical differential leaves ker d'");
      sub_d[j] = s;
      inc_f[j] = z;
      int h = quot_rank[j];
      MatQ coords = coordinates_in(mixed_basis[j], z,
                                   "ker d' basis outside its own span");
      if (h > 0) proj_f[j] = coords.block(0, 0, h, z.cols());
    }
    int h = quot_rank[j];
    if (h > 0) {
      MatQ reps = mixed_basis[j].block(0, 0, n, h);
      MatQ moved = dv * reps;
      int h_up = quot_rank.count(j + 1) ? quot_rank[j + 1] : 0;
      int mixed_up_cols =
          mixed_basis.count(j + 1) ? mixed_basis[j + 1].cols() : 0;
      MatQ q(h_up, h);
      if (mixed_up_cols > 0) {
        MatQ coords = coordinates_in(mixed_basis[j + 1], moved,
                                     "vertical differential leaves ker d'");
        if (h_up > 0) q = coords.block(0, 0, h_up, h);
      } else {
        require(moved.is_zero(), ErrorKind::InvariantViolation,
                "vertical differential leaves ker d'");
      }
      if (h_up > 0) quot_d[j] = q;
    }
  }

  DelDiagram diag;
  diag.full = make_graded_complex(full_dims, full_d);
  diag.sub = make_graded_complex(sub_dims, sub_d);
  diag.quotient = make_graded_complex(quot_dims, quot_d);
  diag.inclusion = make_chain_map(diag.sub, diag.full, inc_f);
  diag.projection = make_chain_map(diag.sub, diag.quotient, proj_f);
  return diag;
}

DelQuasiIsoReport quasi_iso_check(const FiniteDoubleComplex& k) {
  DelDiagram diag = del_diagram(k);
  DelQuasiIsoReport rep;
  rep.inclusion = quasi_iso_check(diag.inclusion);
  rep.projection = quasi_iso_check(diag.projection);
  rep.pass = rep.inclusion.pass && rep.projection.pass;
  return rep;
}

// --- deterministic random instances -------------------------------------

namespace {

int pick(std::mt19937_64& g, int lo, int hi) {
  return lo + (int)(g() % (std::uint64_t)(hi - lo + 1));
}

GQ small_nonzero(std::mt19937_64& g, int mx) {
  for (;;) {
    GQ v(mpq_class(pick(g, -mx, mx)), mpq_class(pick(g, -mx, mx)));
    if (!v.is_zero()) return v;
  }
}

MatQ random_unimodular(std::mt19937_64& g, int n, int mx) {
  MatQ lo = MatQ::identity(n), up = MatQ::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i > j) lo(i, j) = GQ(mpq_class(pick(g, -mx, mx)),
                               mpq_class(pick(g, -mx, mx)));
      if (i < j) up(i, j) = GQ(mpq_class(pick(g, -mx, mx)),
                               mpq_class(pick(g, -mx, mx)));
    }
  return lo * up;
}

struct Builder {
  std::map<BiDeg, int> dims;
  struct Ent {
    BiDeg src;
    int row, col;
    GQ val;
  };
  std::vector<Ent> d, dp, delta;

  int alloc(int i, int j) { return dims[{i, j}]++; }

  std::map<BiDeg, MatQ> materialize(const std::vector<Ent>& ents, int di,
                                    int dj) const {
    std::map<BiDeg, MatQ> out;
    for (const Ent& e : ents) {
      auto [i, j] = e.src;
      auto it = out.find(e.src);
      if (it == out.end())
        it = out.emplace(e.src, MatQ(map_dim(dims, i + di, j + dj),
                                     map_dim(dims, i, j)))
                 .first;
      it->second(e.row, e.col) += e.val;
    }
    return out;
  }
};

FiniteDoubleComplex conjugated(const FiniteDoubleComplex& k,
                               std::mt19937_64& g, int mx) {
  std::map<BiDeg, MatQ> p, pinv;
  for (const auto& [ij, n] : k.dims) {
    MatQ m = random_unimodular(g, n, mx);
    p[ij] = m;
    pinv[ij] = inverse(m);
  }
  auto conj = [&](const std::map<BiDeg, MatQ>& blocks, int di, int dj) {
    std::map<BiDeg, MatQ> out;
    for (const auto& [src, m] : blocks) {
      BiDeg tgt{src.first + di, src.second + dj};
      MatQ moved = m;
      if (auto it = p.find(src); it != p.end()) moved = moved * it->second;
      if (auto it = pinv.find(tgt); it != pinv.end())
        moved = it->second * moved;
      out[src] = moved;
    }
    return out;
  };
  FiniteDoubleComplex r;
  r.dims = k.dims;
  r.d = conj(k.d, 0, 1);
  r.dp = conj(k.dp, 1, 0);
  r.delta = conj(k.delta, 0, -1);
  r.has_delta = k.has_delta;
  return r;
}

// Position with room for a piece spanning wi extra columns and wj extra rows
// upward (and dj_down extra rows downward).
BiDeg place(std::mt19937_64& g, int imin, int imax, int jmin, int jmax, int wi,
            int wj_up, int wj_down) {
  require(imax - wi >= imin && jmax - wj_up >= jmin + wj_down,
          ErrorKind::BadArgument,
          "index range too small for requested pieces");
  return {pick(g, imin, imax - wi), pick(g, jmin + wj_down, jmax - wj_up)};
}

int parity_sign(int j) { return ((j % 2) + 2) % 2 == 0 ? 1 : -1; }

// Quartet at (i, j): a and e = delta d a sit at (i, j), d a at (i, j+1),
// delta a at (i, j-1).  Returns the four indices (a, b, c, e).
std::array<int, 4> add_quartet(Builder& b, int i, int j) {
  int a = b.alloc(i, j);
  int e = b.alloc(i, j);
  int bb = b.alloc(i, j + 1);
  int c = b.alloc(i, j - 1);
  b.d.push_back({{i, j}, bb, a, GQ(1)});
  b.d.push_back({{i, j - 1}, e, c, GQ(-1)});
  b.delta.push_back({{i, j}, c, a, GQ(1)});
  b.delta.push_back({{i, j + 1}, e, bb, GQ(1)});
  return {a, bb, c, e};
}

}  // namespace

FiniteDoubleComplex random_double_complex(std::uint64_t seed,
                                         const RandomComplexSpec& spec) {
  std::mt19937_64 g(seed);
  Builder b;
  for (int t = 0; t < spec.dots; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 0, 0, 0);
    b.alloc(i, j);
  }
  for (int t = 0; t < spec.vdominoes; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 0, 1, 0);
    int a = b.alloc(i, j), bb = b.alloc(i, j + 1);
    b.d.push_back({{i, j}, bb, a, small_nonzero(g, spec.max_entry)});
  }
  for (int t = 0; t < spec.hdominoes; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 1, 0, 0);
    int a = b.alloc(i, j), c = b.alloc(i + 1, j);
    b.dp.push_back({{i, j}, c, a, small_nonzero(g, spec.max_entry)});
  }
  for (int t = 0; t < spec.squares; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 1, 1, 0);
    int a = b.alloc(i, j), bb = b.alloc(i, j + 1);
    int c = b.alloc(i + 1, j), e = b.alloc(i + 1, j + 1);
    b.d.push_back({{i, j}, bb, a, GQ(1)});
    b.d.push_back({{i + 1, j}, e, c, GQ(-1)});
    b.dp.push_back({{i, j}, c, a, GQ(1)});
    b.dp.push_back({{i, j + 1}, e, bb, GQ(1)});
  }
  for (int t = 0; t < spec.zigzags; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 2, 1, 0);
    int x = b.alloc(i, j + 1), z = b.alloc(i + 1, j + 1);
    int y = b.alloc(i + 1, j), w = b.alloc(i + 2, j);
    b.d.push_back({{i + 1, j}, z, y, GQ(1)});
    b.dp.push_back({{i, j + 1}, z, x, GQ(1)});
    b.dp.push_back({{i + 1, j}, w, y, GQ(1)});
  }
  FiniteDoubleComplex k;
  k.dims = b.dims;
  k.d = b.materialize(b.d, 0, 1);
  k.dp = b.materialize(b.dp, 1, 0);
  k.has_delta = false;
  if (spec.conjugate) k = conjugated(k, g, spec.max_entry);
  validate_double_complex(k);
  return k;
}

FiniteDoubleComplex random_hodge_pair_complex(std::uint64_t seed,
                                              const HodgePairSpec& spec) {
  std::mt19937_64 g(seed);
  Builder b;
  for (int t = 0; t < spec.dots; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 0, 0, 0);
    b.alloc(i, j);
  }
  for (int t = 0; t < spec.quartets; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 0, 1, 1);
    add_quartet(b, i, j);
  }
  for (int t = 0; t < spec.sheets; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 1, 1, 1);
    auto q1 = add_quartet(b, i, j);
    auto q2 = add_quartet(b, i + 1, j);
    GQ s(parity_sign(j));
    // d' is the sign-twisted identity between the two copies: (-1)^row.
    b.dp.push_back({{i, j}, q2[0], q1[0], s});           // a
    b.dp.push_back({{i, j}, q2[3], q1[3], s});           // e
    b.dp.push_back({{i, j + 1}, q2[1], q1[1], -s});      // d a
    b.dp.push_back({{i, j - 1}, q2[2], q1[2], -s});      // delta a
  }
  for (int t = 0; t < spec.bare_vdominoes; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 0, 1, 0);
    int a = b.alloc(i, j), bb = b.alloc(i, j + 1);
    b.d.push_back({{i, j}, bb, a, small_nonzero(g, spec.max_entry)});
  }
  for (int t = 0; t < spec.bare_delta_dominoes; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 0, 0, 1);
    int a = b.alloc(i, j), c = b.alloc(i, j - 1);
    b.delta.push_back({{i, j}, c, a, small_nonzero(g, spec.max_entry)});
  }
  for (int t = 0; t < spec.dot_sheets; ++t) {
    auto [i, j] = place(g, spec.imin, spec.imax, spec.jmin, spec.jmax, 1, 0, 0);
    int a = b.alloc(i, j), c = b.alloc(i + 1, j);
    b.dp.push_back({{i, j}, c, a, small_nonzero(g, spec.max_entry)});
  }
  FiniteDoubleComplex k;
  k.dims = b.dims;
  k.d = b.materialize(b.d, 0, 1);
  k.dp = b.materialize(b.dp, 1, 0);
  k.delta = b.materialize(b.delta, 0, -1);
  k.has_delta = true;
  if (spec.conjugate) k = conjugated(k, g, spec.max_entry);
  validate_double_complex(k);
  return k;
}

std::string to_string(const FiniteDoubleComplex& k) {
  std::ostringstream os;
  os << "double complex {";
  bool first = true;
  for (const auto& [ij, dim] : k.dims) {
    if (!first) os << ", ";
    os << at(ij.first, ij.second) << ":" << dim;
    first = false;
  }
  os << "}";
  if (k.has_delta) os << " with delta";
  return os.str();
}

}  // namespace genformal
