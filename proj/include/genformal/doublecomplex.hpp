#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "genformal/errors.hpp"
#include "genformal/matrix.hpp"

namespace genformal {

// Bidegree (i, j): i is the first (horizontal) index, j the second (vertical).
using BiDeg = std::pair<int, int>;

// Bounded bigraded complex over Q(i): finite-dimensional pieces K^{i,j}, a
// vertical differential d of degree (0,1), a horizontal differential d' of
// degree (1,0), and optionally a second vertical differential delta of degree
// (0,-1), all given as explicit matrices acting on column coordinates.
// Identities: d^2 = d'^2 = dd' + d'd = 0, and when delta is carried also
// delta^2 = d delta + delta d = d' delta + delta d' = 0.
struct FiniteDoubleComplex {
  std::map<BiDeg, int> dims;     // nonzero pieces only, dims > 0
  std::map<BiDeg, MatQ> d;      // block at (i,j) maps K^{i,j} -> K^{i,j+1}
  std::map<BiDeg, MatQ> dp;     // block at (i,j) maps K^{i,j} -> K^{i+1,j}
  std::map<BiDeg, MatQ> delta;  // block at (i,j) maps K^{i,j} -> K^{i,j-1}
  bool has_delta = false;
};

// Validating factories; omitted blocks are zero matrices.  Shape problems
// throw BadArgument, broken differential identities throw InvariantViolation.
FiniteDoubleComplex make_double_complex(std::map<BiDeg, int> dims,
                                        std::map<BiDeg, MatQ> d,
                                        std::map<BiDeg, MatQ> dp);
FiniteDoubleComplex make_double_complex(std::map<BiDeg, int> dims,
                                        std::map<BiDeg, MatQ> d,
                                        std::map<BiDeg, MatQ> dp,
                                        std::map<BiDeg, MatQ> delta);
// Re-checks every identity; operations call this so that a complex tampered
// with after construction is rejected rather than silently miscomputed.
void validate_double_complex(const FiniteDoubleComplex& k);

int dim_at(const FiniteDoubleComplex& k, int i, int j);
// Named differential block with source K^{i,j}; a zero matrix of the correct
// shape when no block is stored.
MatQ d_block(const FiniteDoubleComplex& k, int i, int j);
MatQ dp_block(const FiniteDoubleComplex& k, int i, int j);
MatQ delta_block(const FiniteDoubleComplex& k, int i, int j);

// Ordered layout of the total-degree-n slice Tot^n = (+)_{i+j=n} K^{i,j},
// blocks listed by ascending first index.
struct TotalLayout {
  std::vector<BiDeg> blocks;
  std::map<BiDeg, int> offset;
  int total = 0;
};
TotalLayout total_layout(const FiniteDoubleComplex& k, int n);
// D = d + d' : Tot^n -> Tot^{n+1} and delta : Tot^n -> Tot^{n-1}.
MatQ total_differential(const FiniteDoubleComplex& k, int n);
MatQ total_delta(const FiniteDoubleComplex& k, int n);

// dim ker D / im D for every total degree with a nonzero slice.
std::map<int, int> total_cohomology(const FiniteDoubleComplex& k);

// Pages of the spectral sequence of the filtration by the first index,
// F^p Tot = (+)_{i >= p} K^{i,j}.  pages[r] maps bidegrees to dim E_r^{i,j}
// (nonzero entries only) for r = 0..max_r; E_0 = K, E_1 is d-cohomology, and
// the page-r differential shifts bidegree by (r, 1-r).  Computed from the
// cycle spaces Z_r = F^p  intersect D^{-1}(F^{p+r}) and boundary images by
// direct elimination.
struct SpectralPages {
  std::vector<std::map<BiDeg, int>> pages;
};
SpectralPages spectral_pages(const FiniteDoubleComplex& k, int max_r);
// Page from which all later pages provably agree (first-index width + 1).
int stable_page(const FiniteDoubleComplex& k);
// True when the E_1 page already equals the stable page.
bool degenerates_at_e1(const FiniteDoubleComplex& k);

// Verdict of the degeneration lemma for the triple (d, d', delta): when
//   (a) im d  intersect ker delta = ker d intersect im delta = im (d delta)
//       in every bidegree, and
//   (b) the first-index spectral sequence degenerates at E_1,
// then im D intersect ker delta = im (D delta) in every total degree.  Both
// hypotheses are checked, never assumed; when one fails the conclusion is
// still computed so the sides can be inspected.
struct DdeltaReport {
  bool hypothesis_a = false;
  bool hypothesis_b = false;
  bool conclusion = false;
  bool pass = false;            // hypotheses and conclusion all hold
  BiDeg failed_bidegree{0, 0};  // first bidegree violating (a), if any
  int failed_degree = 0;        // first total degree violating the conclusion
  std::map<int, int> lhs_dims;  // dim(im D intersect ker delta) per degree
  std::map<int, int> rhs_dims;  // dim(im D delta) per degree
};
DdeltaReport check_Ddelta(const FiniteDoubleComplex& k);

// Singly graded finite cochain complex with differential of degree +1.
struct GradedComplex {
  std::map<int, int> dims;  // nonzero degrees only, dims > 0
  std::map<int, MatQ> d;   // block at n maps C^n -> C^{n+1}
};
GradedComplex make_graded_complex(std::map<int, int> dims,
                                  std::map<int, MatQ> d);
int gdim_at(const GradedComplex& c, int n);
MatQ gd_block(const GradedComplex& c, int n);
std::map<int, int> cohomology_dims(const GradedComplex& c);

// Degreewise linear map intertwining the differentials; the factory throws
// NotChainMap when f d != d f in some degree.
struct ChainMap {
  GradedComplex src, dst;
  std::map<int, MatQ> f;  // block at n maps src C^n -> dst C^n
};
ChainMap make_chain_map(GradedComplex src, GradedComplex dst,
                        std::map<int, MatQ> f);
MatQ f_block(const ChainMap& m, int n);

// Checks that the induced maps on cohomology are isomorphisms, by exact rank
// computations degree by degree.
struct QuasiIsoReport {
  bool pass = false;
  int failed_degree = 0;  // first degree whose induced map is not bijective
  std::map<int, int> src_cohomology;
  std::map<int, int> dst_cohomology;
};
QuasiIsoReport quasi_iso_check(const ChainMap& m);

// Comparison diagram attached to a double complex whose horizontal
// differential d' plays the role of the inner operator and whose vertical
// differential d is the outer one.  Grading by the second index j makes d' a
// square-zero endomorphism of each level C^j = (+)_i K^{i,j}, and
//   (C, d)  <--inclusion--  (ker d', d)  --projection-->  (H_{d'}, d)
// are chain maps.
struct DelDiagram {
  GradedComplex full, sub, quotient;
  ChainMap inclusion, projection;
};
DelDiagram del_diagram(const FiniteDoubleComplex& k);

// Runs quasi_iso_check on both legs of del_diagram(k).
struct DelQuasiIsoReport {
  QuasiIsoReport inclusion, projection;
  bool pass = false;
};
DelQuasiIsoReport quasi_iso_check(const FiniteDoubleComplex& k);

// --- deterministic random instances -------------------------------------
//
// Generators assemble anti-commuting elementary pieces at random positions
// and then conjugate every block by a random invertible change of basis, so
// all differential identities hold by construction while the matrices look
// generic.  The same seed always reproduces the same instance.

struct RandomComplexSpec {
  int imin = 0, imax = 2;  // first-index range for piece placement
  int jmin = 0, jmax = 2;  // second-index range
  int dots = 2;            // single generators, both differentials zero
  int vdominoes = 2;       // pairs x, dx
  int hdominoes = 2;       // pairs x, d'x
  int squares = 2;         // full anti-commuting squares x, dx, d'x, d'dx
  int zigzags = 0;         // length-3 staircases; they carry a nonzero
                           // page-2 differential
  bool conjugate = true;
  int max_entry = 2;       // magnitude bound for random basis-change entries
};
FiniteDoubleComplex random_double_complex(std::uint64_t seed,
                                         const RandomComplexSpec& spec);

// Instances carrying delta.  Quartets {a, da, delta a, delta da} and their
// d'-connected double sheets satisfy hypothesis (a) of check_Ddelta by
// construction and keep E_1 degenerate; each "bare" piece breaks exactly one
// hypothesis and serves as a negative control.
struct HodgePairSpec {
  int imin = 0, imax = 2;
  int jmin = 0, jmax = 2;
  int quartets = 2;
  int sheets = 1;                // d'-connected quartet pairs
  int dots = 2;                  // harmonic generators, all maps zero
  int bare_vdominoes = 0;        // x, dx with delta = 0: breaks (a)
  int bare_delta_dominoes = 0;   // x, delta x with d = 0: breaks (a)
  int dot_sheets = 0;            // d'-connected dot pairs: break (b)
  bool conjugate = true;
  int max_entry = 2;
};
FiniteDoubleComplex random_hodge_pair_complex(std::uint64_t seed,
                                              const HodgePairSpec& spec);

std::string to_string(const FiniteDoubleComplex& k);

}  // namespace genformal
