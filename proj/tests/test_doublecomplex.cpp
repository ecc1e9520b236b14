#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "genformal/doublecomplex.hpp"

using namespace genformal;

namespace {

MatQ mat(int rows, int cols, std::vector<long> vals) {
  MatQ m(rows, cols);
  int t = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = GQ(vals[t++]);
  return m;
}

// Unit anti-commuting square spanning (0,0)..(1,1).
FiniteDoubleComplex hand_square() {
  std::map<BiDeg, int> dims{{{0, 0}, 1}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}};
  std::map<BiDeg, MatQ> d{{{0, 0}, mat(1, 1, {1})}, {{1, 0}, mat(1, 1, {-1})}};
  std::map<BiDeg, MatQ> dp{{{0, 0}, mat(1, 1, {1})}, {{0, 1}, mat(1, 1, {1})}};
  return make_double_complex(dims, d, dp);
}

FiniteDoubleComplex hand_vdomino() {
  std::map<BiDeg, int> dims{{{0, 0}, 1}, {{0, 1}, 1}};
  std::map<BiDeg, MatQ> d{{{0, 0}, mat(1, 1, {1})}};
  return make_double_complex(dims, d, {});
}

FiniteDoubleComplex hand_hdomino() {
  std::map<BiDeg, int> dims{{{0, 0}, 1}, {{1, 0}, 1}};
  std::map<BiDeg, MatQ> dp{{{0, 0}, mat(1, 1, {1})}};
  return make_double_complex(dims, {}, dp);
}

// Length-3 staircase x --d'--> z <--d-- y --d'--> w: its only surviving
// classes are killed by the page-2 differential.
FiniteDoubleComplex hand_zigzag() {
  std::map<BiDeg, int> dims{
      {{0, 1}, 1}, {{1, 1}, 1}, {{1, 0}, 1}, {{2, 0}, 1}};
  std::map<BiDeg, MatQ> d{{{1, 0}, mat(1, 1, {1})}};
  std::map<BiDeg, MatQ> dp{{{0, 1}, mat(1, 1, {1})}, {{1, 0}, mat(1, 1, {1})}};
  return make_double_complex(dims, d, dp);
}

}  // namespace

TEST_CASE("double complex validation accepts lawful data and rejects broken identities") {
  FiniteDoubleComplex k = hand_square();
  CHECK(dim_at(k, 0, 0) == 1);
  CHECK(dim_at(k, 1, 1) == 1);
  CHECK(dim_at(k, 5, 5) == 0);
  CHECK(d_block(k, 0, 0).rows() == 1);
  CHECK(d_block(k, 0, 1).rows() == 0);  // nothing above (0,1)
  CHECK(dp_block(k, 1, 0).rows() == 0);
  CHECK(to_string(k).find("(0,0):1") != std::string::npos);

  // d fails to square to zero on a column of three lines.
  try {
    std::map<BiDeg, int> dims{{{0, 0}, 1}, {{0, 1}, 1}, {{0, 2}, 1}};
    std::map<BiDeg, MatQ> d{{{0, 0}, mat(1, 1, {1})}, {{0, 1}, mat(1, 1, {1})}};
    make_double_complex(dims, d, {});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvariantViolation);
  }

  // Commuting instead of anti-commuting square.
  try {
    std::map<BiDeg, int> dims{{{0, 0}, 1}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}};
    std::map<BiDeg, MatQ> d{{{0, 0}, mat(1, 1, {1})}, {{1, 0}, mat(1, 1, {1})}};
    std::map<BiDeg, MatQ> dp{{{0, 0}, mat(1, 1, {1})}, {{0, 1}, mat(1, 1, {1})}};
    make_double_complex(dims, d, dp);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvariantViolation);
  }

  // Misshapen block and non-positive dimension are argument errors.
  try {
    std::map<BiDeg, int> dims{{{0, 0}, 1}, {{0, 1}, 2}};
    std::map<BiDeg, MatQ> d{{{0, 0}, mat(1, 1, {1})}};
    make_double_complex(dims, d, {});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadArgument);
  }
  try {
    make_double_complex({{{0, 0}, 0}}, {}, {});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadArgument);
  }

  // delta must anti-commute with d: a two-line complex with delta equal to
  // the transpose of d violates d delta + delta d = 0.
  try {
    std::map<BiDeg, int> dims{{{0, 0}, 1}, {{0, 1}, 1}};
    std::map<BiDeg, MatQ> d{{{0, 0}, mat(1, 1, {1})}};
    std::map<BiDeg, MatQ> delta{{{0, 1}, mat(1, 1, {1})}};
    make_double_complex(dims, d, {}, delta);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvariantViolation);
  }

  // delta blocks without the delta factory are rejected.
  try {
    FiniteDoubleComplex raw;
    raw.dims = {{{0, 0}, 1}, {{0, 1}, 1}};
    raw.delta = {{{0, 1}, mat(1, 1, {1})}};
    raw.has_delta = false;
    validate_double_complex(raw);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadArgument);
  }

  // Tampering after construction is caught by the operations themselves.
  FiniteDoubleComplex tampered = hand_square();
  tampered.d[{0, 0}] = mat(1, 1, {2});
  try {
    total_cohomology(tampered);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvariantViolation);
  }
}

TEST_CASE("total cohomology: zero differentials, acyclic rows, and the rank oracle") {
  // All differentials zero: cohomology is the componentwise dimension count.
  {
    std::map<BiDeg, int> dims{{{0, 0}, 2}, {{1, 0}, 3}, {{0, 1}, 1}};
    FiniteDoubleComplex k = make_double_complex(dims, {}, {});
    std::map<int, int> h = total_cohomology(k);
    CHECK(h == std::map<int, int>{{0, 2}, {1, 4}});
  }

  // A single row on which d' is an isomorphism is acyclic.
  {
    std::map<BiDeg, int> dims{{{0, 0}, 2}, {{1, 0}, 2}};
    std::map<BiDeg, MatQ> dp{{{0, 0}, mat(2, 2, {1, 2, 0, 1})}};
    FiniteDoubleComplex k = make_double_complex(dims, {}, dp);
    std::map<int, int> h = total_cohomology(k);
    CHECK(h == std::map<int, int>{{0, 0}, {1, 0}});
  }

  // The unit square is acyclic as well.
  {
    std::map<int, int> h = total_cohomology(hand_square());
    CHECK(h == std::map<int, int>{{0, 0}, {1, 0}, {2, 0}});
  }

  // Euler characteristic oracle: the alternating sum of cohomology dims
  // always equals the alternating sum of component dims.
  for (int t = 0; t < 6; ++t) {
    RandomComplexSpec spec;
    spec.imax = 2 + t % 2;
    spec.jmax = 2;
    spec.dots = 1 + t % 3;
    spec.vdominoes = 1 + t % 2;
    spec.hdominoes = 2 - t % 2;
    spec.squares = 1 + t % 2;
    spec.zigzags = t % 2;
    FiniteDoubleComplex k = random_double_complex(825000 + t, spec);
    long lhs = 0, rhs = 0;
    for (const auto& [n, h] : total_cohomology(k)) lhs += (n % 2 ? -1 : 1) * h;
    for (const auto& [ij, dim] : k.dims)
      rhs += ((ij.first + ij.second) % 2 ? -1 : 1) * dim;
    CAPTURE(t);
    CHECK(lhs == rhs);
  }

  // Instances assembled from exact-row pieces only are totally acyclic.
  for (int t = 0; t < 4; ++t) {
    RandomComplexSpec spec;
    spec.dots = 0;
    spec.vdominoes = 0;
    spec.hdominoes = 3;
    spec.squares = 2;
    FiniteDoubleComplex k = random_double_complex(825010 + t, spec);
    for (const auto& [n, h] : total_cohomology(k)) {
      CAPTURE(t);
      CAPTURE(n);
      CHECK(h == 0);
    }
  }

  // Dots-only instances recover their dimension counts.
  {
    RandomComplexSpec spec;
    spec.dots = 5;
    spec.vdominoes = spec.hdominoes = spec.squares = 0;
    FiniteDoubleComplex k = random_double_complex(825020, spec);
    std::map<int, int> expect;
    for (const auto& [ij, dim] : k.dims) expect[ij.first + ij.second] += dim;
    CHECK(total_cohomology(k) == expect);
  }
}

TEST_CASE("spectral pages are monotone, stabilize, and expose higher differentials") {
  // Zero differentials: every page equals the dimension table.
  {
    std::map<BiDeg, int> dims{{{0, 0}, 2}, {{1, 1}, 1}, {{2, 0}, 3}};
    FiniteDoubleComplex k = make_double_complex(dims, {}, {});
    SpectralPages sp = spectral_pages(k, 4);
    for (int r = 0; r <= 4; ++r) CHECK(sp.pages[r] == dims);
    CHECK(degenerates_at_e1(k));
  }

  // A vertical domino dies at page one already.
  {
    FiniteDoubleComplex k = hand_vdomino();
    CHECK(stable_page(k) == 1);
    SpectralPages sp = spectral_pages(k, 1);
    CHECK(sp.pages[0] == std::map<BiDeg, int>{{{0, 0}, 1}, {{0, 1}, 1}});
    CHECK(sp.pages[1].empty());
    CHECK(degenerates_at_e1(k));
  }

  // A horizontal domino survives to page one and is killed by the page-one
  // differential: E_1 differs from E_2.
  {
    FiniteDoubleComplex k = hand_hdomino();
    CHECK(stable_page(k) == 2);
    SpectralPages sp = spectral_pages(k, 2);
    CHECK(sp.pages[1] == std::map<BiDeg, int>{{{0, 0}, 1}, {{1, 0}, 1}});
    CHECK(sp.pages[2].empty());
    CHECK(sp.pages[1] != sp.pages[2]);
    CHECK_FALSE(degenerates_at_e1(k));
  }

  // The staircase has vanishing page-one differential but a nonzero page-two
  // differential: E_1 = E_2 while E_3 = 0.  (So page-dim equality at one
  // stage does not imply the sequence has stabilized.)
  {
    FiniteDoubleComplex k = hand_zigzag();
    CHECK(stable_page(k) == 3);
    SpectralPages sp = spectral_pages(k, 3);
    std::map<BiDeg, int> expect{{{0, 1}, 1}, {{2, 0}, 1}};
    CHECK(sp.pages[1] == expect);
    CHECK(sp.pages[2] == expect);
    CHECK(sp.pages[3].empty());
    CHECK_FALSE(degenerates_at_e1(k));
    std::map<int, int> h = total_cohomology(k);
    CHECK(h == std::map<int, int>{{1, 0}, {2, 0}});
  }

  // Random instances: page dims never increase, pages beyond the stable
  // index agree, and the limit page adds up to the total cohomology.
  for (int t = 0; t < 6; ++t) {
    RandomComplexSpec spec;
    spec.imax = 3;
    spec.jmax = 2;
    spec.dots = t % 3;
    spec.vdominoes = 1 + t % 2;
    spec.hdominoes = 1;
    spec.squares = 1 + t % 2;
    spec.zigzags = 1;
    FiniteDoubleComplex k = random_double_complex(825030 + t, spec);
    int stable = stable_page(k);
    SpectralPages sp = spectral_pages(k, stable + 1);
    CAPTURE(t);
    for (int r = 0; r + 1 < (int)sp.pages.size(); ++r) {
      for (const auto& [ij, dim] : sp.pages[r + 1]) {
        auto it = sp.pages[r].find(ij);
        REQUIRE(it != sp.pages[r].end());
        CHECK(dim <= it->second);
      }
    }
    CHECK(sp.pages[stable] == sp.pages[stable + 1]);
    std::map<int, int> limit_by_degree;
    for (const auto& [ij, dim] : sp.pages[stable])
      limit_by_degree[ij.first + ij.second] += dim;
    for (const auto& [n, h] : total_cohomology(k)) {
      int got = limit_by_degree.count(n) ? limit_by_degree[n] : 0;
      CAPTURE(n);
      CHECK(got == h);
    }
    for (const auto& [n, e] : limit_by_degree) CHECK(e == total_cohomology(k)[n]);
  }

  try {
    spectral_pages(hand_square(), -1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadArgument);
  }
}

TEST_CASE("the degeneration lemma holds whenever both of its hypotheses verify") {
  // Zero differentials with delta = 0: hypotheses and conclusion all hold
  // with both sides zero.
  {
    std::map<BiDeg, int> dims{{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}};
    FiniteDoubleComplex k = make_double_complex(dims, {}, {}, {});
    DdeltaReport rep = check_Ddelta(k);
    CHECK(rep.hypothesis_a);
    CHECK(rep.hypothesis_b);
    CHECK(rep.conclusion);
    CHECK(rep.pass);
    for (const auto& [n, v] : rep.lhs_dims) CHECK(v == 0);
    for (const auto& [n, v] : rep.rhs_dims) CHECK(v == 0);
  }

  // delta = 0 with a nonzero d breaks hypothesis (a): im d meets ker delta
  // (everything) but im d.delta vanishes.
  {
    std::map<BiDeg, int> dims{{{0, 0}, 1}, {{0, 1}, 1}};
    std::map<BiDeg, MatQ> d{{{0, 0}, mat(1, 1, {1})}};
    FiniteDoubleComplex k = make_double_complex(dims, d, {}, {});
    DdeltaReport rep = check_Ddelta(k);
    CHECK_FALSE(rep.hypothesis_a);
    CHECK(rep.failed_bidegree == BiDeg{0, 1});
    CHECK(rep.hypothesis_b);  // the lone column is vertically acyclic
    CHECK_FALSE(rep.conclusion);
    CHECK_FALSE(rep.pass);
    CHECK(rep.lhs_dims[1] == 1);
    CHECK(rep.rhs_dims[1] == 0);
  }

  // Machine check: harmonically assembled instances satisfy (a) and (b) by
  // construction, and the conclusion follows on every one of them.
  int verified = 0;
  for (int t = 0; t < 400; ++t) {
    HodgePairSpec spec;
    spec.imax = 2 + t % 2;
    spec.jmax = 3;
    spec.quartets = 1 + t % 3;
    spec.sheets = t % 3 == 0 ? 0 : 1;
    spec.dots = t % 4;
    FiniteDoubleComplex k = random_hodge_pair_complex(825100 + t, spec);
    DdeltaReport rep = check_Ddelta(k);
    CAPTURE(t);
    CHECK(rep.hypothesis_a);
    CHECK(rep.hypothesis_b);
    CHECK(rep.conclusion);
    CHECK(rep.pass);
    // The lemma itself: hypotheses verified implies conclusion verified.
    CHECK((!(rep.hypothesis_a && rep.hypothesis_b) || rep.conclusion));
    ++verified;
  }
  CHECK(verified == 400);

  // Negative controls: each bare piece breaks exactly the hypothesis it was
  // designed to break, and failures are reported as hypothesis failures --
  // never as a counterexample to the lemma.
  for (int t = 0; t < 25; ++t) {
    HodgePairSpec spec;
    spec.quartets = 1 + t % 2;
    spec.sheets = t % 2;
    spec.dots = 1;
    spec.bare_vdominoes = 1;
    FiniteDoubleComplex k = random_hodge_pair_complex(825600 + t, spec);
    DdeltaReport rep = check_Ddelta(k);
    CAPTURE(t);
    CHECK_FALSE(rep.hypothesis_a);
    CHECK_FALSE(rep.pass);
    CHECK((!(rep.hypothesis_a && rep.hypothesis_b) || rep.conclusion));
    CHECK(rep.lhs_dims.size() > 0);  // sides still computed for inspection
  }
  for (int t = 0; t < 25; ++t) {
    HodgePairSpec spec;
    spec.quartets = 1;
    spec.sheets = 0;
    spec.dots = 1;
    spec.bare_delta_dominoes = 1;
    FiniteDoubleComplex k = random_hodge_pair_complex(825650 + t, spec);
    DdeltaReport rep = check_Ddelta(k);
    CAPTURE(t);
    CHECK_FALSE(rep.hypothesis_a);
    CHECK((!(rep.hypothesis_a && rep.hypothesis_b) || rep.conclusion));
  }
  for (int t = 0; t < 25; ++t) {
    HodgePairSpec spec;
    spec.quartets = 1;
    spec.sheets = 1;
    spec.dots = 1;
    spec.dot_sheets = 1;  // connected dots survive to E_1 and then die
    FiniteDoubleComplex k = random_hodge_pair_complex(825700 + t, spec);
    DdeltaReport rep = check_Ddelta(k);
    CAPTURE(t);
    CHECK(rep.hypothesis_a);
    CHECK_FALSE(rep.hypothesis_b);
    CHECK_FALSE(rep.conclusion);
    CHECK_FALSE(rep.pass);
    CHECK((!(rep.hypothesis_a && rep.hypothesis_b) || rep.conclusion));
    CHECK(rep.lhs_dims != rep.rhs_dims);
  }

  // Asking for the delta verdict without a delta is an argument error.
  try {
    check_Ddelta(hand_square());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadArgument);
  }
}

TEST_CASE("comparison maps to the inner-kernel and inner-cohomology complexes") {
  // On the unit square both legs are quasi-isomorphisms between acyclic
  // complexes.
  {
    FiniteDoubleComplex k = hand_square();
    DelDiagram diag = del_diagram(k);
    CHECK(diag.full.dims == std::map<int, int>{{0, 2}, {1, 2}});
    CHECK(diag.sub.dims == std::map<int, int>{{0, 1}, {1, 1}});
    CHECK(diag.quotient.dims.empty());
    DelQuasiIsoReport rep = quasi_iso_check(k);
    CHECK(rep.pass);
    CHECK(rep.inclusion.pass);
    CHECK(rep.projection.pass);
    CHECK(rep.inclusion.src_cohomology.empty());
    CHECK(rep.inclusion.dst_cohomology.empty());
  }

  // Dot-and-square instances satisfy the inner-outer lemma, so both legs
  // are quasi-isomorphisms; the three cohomologies agree dimensionwise.
  for (int t = 0; t < 5; ++t) {
    RandomComplexSpec spec;
    spec.dots = 1 + t % 3;
    spec.vdominoes = 0;
    spec.hdominoes = 0;
    spec.squares = 1 + t % 2;
    FiniteDoubleComplex k = random_double_complex(825200 + t, spec);
    DelQuasiIsoReport rep = quasi_iso_check(k);
    CAPTURE(t);
    CHECK(rep.pass);
    CHECK(rep.inclusion.src_cohomology == rep.inclusion.dst_cohomology);
    CHECK(rep.projection.src_cohomology == rep.projection.dst_cohomology);
  }

  // Four-dimensional counterexample: one horizontal and one vertical domino.
  // The inner cohomology collapses while the full complex keeps two classes,
  // so neither leg induces an isomorphism.
  {
    std::map<BiDeg, int> dims{{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}};
    std::map<BiDeg, MatQ> d{{{0, 0}, mat(1, 2, {0, 1})}};
    std::map<BiDeg, MatQ> dp{{{0, 0}, mat(1, 2, {1, 0})}};
    FiniteDoubleComplex k = make_double_complex(dims, d, dp);
    DelQuasiIsoReport rep = quasi_iso_check(k);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.inclusion.pass);
    CHECK_FALSE(rep.projection.pass);
    CHECK(rep.inclusion.failed_degree == 0);
    CHECK(rep.projection.failed_degree == 0);
    CHECK(rep.inclusion.src_cohomology == std::map<int, int>{{0, 1}});
    CHECK(rep.inclusion.dst_cohomology == std::map<int, int>{{0, 2}});
    CHECK(rep.projection.dst_cohomology.empty());
  }

  // The implication is one-way: a lone vertical domino violates the
  // inner-outer lemma yet both comparison maps happen to be isomorphisms.
  {
    DelQuasiIsoReport rep = quasi_iso_check(hand_vdomino());
    CHECK(rep.pass);
  }

  // The empty complex passes trivially.
  {
    FiniteDoubleComplex k = make_double_complex({}, {}, {});
    CHECK(quasi_iso_check(k).pass);
  }

  // Chain map plumbing: identities pass, non-intertwining maps are rejected.
  {
    GradedComplex c = make_graded_complex({{0, 1}, {1, 1}},
                                          {{0, mat(1, 1, {1})}});
    ChainMap ident = make_chain_map(
        c, c, {{0, mat(1, 1, {1})}, {1, mat(1, 1, {1})}});
    CHECK(quasi_iso_check(ident).pass);
    try {
      make_chain_map(c, c, {{0, mat(1, 1, {1})}, {1, mat(1, 1, {0})}});
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotChainMap);
    }
  }

  // A graded complex whose differential fails to square to zero.
  try {
    make_graded_complex({{0, 1}, {1, 1}, {2, 1}},
                        {{0, mat(1, 1, {1})}, {1, mat(1, 1, {1})}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvariantViolation);
  }
}

TEST_CASE("random instance generators reproduce from seeds and honor their recipes") {
  RandomComplexSpec spec;
  spec.zigzags = 1;
  FiniteDoubleComplex a = random_double_complex(825300, spec);
  FiniteDoubleComplex b = random_double_complex(825300, spec);
  CHECK(a.dims == b.dims);
  CHECK(a.d == b.d);
  CHECK(a.dp == b.dp);
  FiniteDoubleComplex c = random_double_complex(825301, spec);
  CHECK((a.dims != c.dims || a.d != c.d || a.dp != c.dp));

  HodgePairSpec hs;
  FiniteDoubleComplex ha = random_hodge_pair_complex(825310, hs);
  FiniteDoubleComplex hb = random_hodge_pair_complex(825310, hs);
  CHECK(ha.dims == hb.dims);
  CHECK(ha.delta == hb.delta);
  CHECK(ha.has_delta);

  // Piece accounting with conjugation disabled: quartets hold four
  // generators, sheets eight, dots one.
  {
    HodgePairSpec plain;
    plain.quartets = 2;
    plain.sheets = 1;
    plain.dots = 3;
    plain.conjugate = false;
    FiniteDoubleComplex k = random_hodge_pair_complex(825320, plain);
    int total = 0;
    for (const auto& [ij, dim] : k.dims) total += dim;
    CHECK(total == 2 * 4 + 1 * 8 + 3);
    CHECK_FALSE(k.delta.empty());
  }

  // A pure staircase instance keeps its deferred collapse after a random
  // change of basis: pages one and two agree, page three is empty.
  {
    RandomComplexSpec zz;
    zz.dots = zz.vdominoes = zz.hdominoes = zz.squares = 0;
    zz.zigzags = 1;
    FiniteDoubleComplex k = random_double_complex(825330, zz);
    CHECK_FALSE(degenerates_at_e1(k));
    SpectralPages sp = spectral_pages(k, 3);
    CHECK(sp.pages[1] == sp.pages[2]);
    CHECK_FALSE(sp.pages[2].empty());
    CHECK(sp.pages[3].empty());
    for (const auto& [n, h] : total_cohomology(k)) CHECK(h == 0);
  }

  // Requesting pieces that cannot fit in the index window is an error.
  try {
    RandomComplexSpec tight;
    tight.imax = 1;
    tight.zigzags = 1;
    random_double_complex(825340, tight);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadArgument);
  }
}
