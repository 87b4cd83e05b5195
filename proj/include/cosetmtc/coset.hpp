#pragma once

#include <vector>

#include "cosetmtc/common.hpp"
#include "cosetmtc/wzw.hpp"

namespace cmtc {

// Diagonal coset SU(N)_{m1} x SU(N)_{m2} / SU(N)_{m1+m2}.
struct CosetSpec {
  int rank_n = 0;
  int m1 = 0;
  int m2 = 0;
  AlgebraSpec num1() const { return {rank_n, m1}; }
  AlgebraSpec num2() const { return {rank_n, m2}; }
  AlgebraSpec den() const { return {rank_n, m1 + m2}; }
  bool operator==(const CosetSpec&) const = default;
};

// Throws std::invalid_argument unless N >= 2 and both levels are >= 1.
void validate_spec(const CosetSpec& spec);

// Index permutation induced on a single-factor theory's weights by the
// basic diagram rotation.
std::vector<int> rotation_permutation(const ModularData& part);

// One orbit of the simultaneous diagram rotation on weight triples.
// `members` lists flattened triple ids starting at the lexicographically
// minimal one, successive rotation images in order; period * mult = N.
struct Orbit {
  std::vector<int> members;
  int period = 0;
  int mult = 0;
  bool in_w0 = false;
};

// Irreducible coset sector: a selection-rule orbit plus a resolution index.
// Orbits with mult = t split into t sectors of equal dimension and
// univalence; free orbits carry the single index 0.
struct CosetSector {
  int orbit = 0;      // index into CosetData::orbits
  int res_index = 0;  // 0-based; external labels use res_index + 1
  double qdim = 0;
  cd univalence = 1.0;
  double delta = 0;   // conformal dimension mod 1, in [0, 1)
};

struct CosetData {
  CosetSpec spec;
  ModularData part1, part2, denom;  // the three factor theories
  ModularData num;                  // product of the numerator factors
  int n1 = 0, n2 = 0, nd = 0;       // factor weight counts
  std::vector<int> sig1, sig2, sigd;  // index maps of the diagram rotation
  std::vector<Orbit> orbits;          // sorted by lexicographic minimum
  std::vector<int> orbit_of;          // flattened triple id -> orbit index
  std::vector<int> first_sector;      // orbit index -> first sector, -1 off W0
  std::vector<CosetSector> sectors;
  int fixed_orbit = -1;               // orbit index of the fixed point, if any
  ModularData md;                     // resolved modular data, type "coset"
  FusionTensor fus1, fus2, fusd;      // factor fusion tensors

  int flat_id(int i1, int i2, int al) const { return (i1 * n2 + i2) * nd + al; }
  void decode(int flat, int& i1, int& i2, int& al) const {
    al = flat % nd;
    const int rest = flat / nd;
    i2 = rest % n2;
    i1 = rest / n2;
  }
  int num_index(int flat) const { return flat / nd; }
  int den_index(int flat) const { return flat % nd; }
  int w0_triple_count() const;
};

// Full pipeline: factor theories, selection rule, orbits, sector
// resolution, resolved S and T.  Supported resolutions: free rotation
// action on the selected triples (any N), or prime N with exactly one
// fixed orbit; anything else throws out_of_scope_error.  Numerical
// consistency failures throw numeric_error.
CosetData build_coset(const CosetSpec& spec, double tol = kStructuralTol);

// sigma-tilde consistency: the Gauss sum over resolved sectors against the
// closed form (1/N) S_11^-1 Sdot_11^-1 exp(-6 pi i (C_G - C_H) / 24), the
// norm identity |sigma|^2 = sum d^2, the vanishing of the deselected-triples
// sum, and the sector sum against (1/N) times the selected-triples sum.
struct SigmaTildeReport {
  cd direct = 0, closed = 0;
  double closed_dev = 0;
  double norm_dev = 0;
  double w1_abs = 0;
  double sector_vs_w0 = 0;
  bool pass(double tol = kStructuralTol) const {
    return closed_dev <= tol && norm_dev <= tol && w1_abs <= tol &&
           sector_vs_w0 <= tol;
  }
};
SigmaTildeReport sigma_tilde_check(const CosetData& d);

// <P(a)P(b), P(c)> for orbits A, B, C (indices into d.orbits, all on W0):
// sum over the N rotation powers of the product of the three factor fusion
// coefficients at the jointly rotated target triple.
long orbit_fusion(const CosetData& d, int A, int B, int C);

// Closed-form fusion coefficient among the resolution components of the
// fixed point (0-based component indices); real-valued rational.
double fixed_point_fusion_value(const CosetData& d, int i, int j, int k);

// Same, cross-checked against the spectral (Verlinde) value on the resolved
// S matrix; disagreement or a non-integer result throws numeric_error.
int fixed_point_fusion(const CosetData& d, int i, int j, int k,
                       double integer_tol = kIntegerTol);

struct CosetVerifyReport {
  AxiomReport axioms;
  double y_condition = 0;         // singular-value condition number of Y
  double orbit_aggregate_dev = 0; // orbit sums vs aggregated spectral fusion
  double fixed_formula_dev = 0;   // closed formula vs spectral, fixed block
  bool fixed_self_conjugate = true;
  bool pass(double tol = kStructuralTol,
            double integer_tol = kIntegerTol) const {
    return axioms.pass(tol, integer_tol) &&
           orbit_aggregate_dev <= integer_tol &&
           fixed_formula_dev <= integer_tol && fixed_self_conjugate &&
           y_condition > 0;
  }
};

// Axioms on the resolved data plus the coset-specific cross-validations:
// every orbit triple's fusion computed both ways, the fixed-point closed
// formula against the spectral values, Y invertibility, self-conjugacy of
// fixed-point sectors.
CosetVerifyReport coset_verify(const CosetData& d,
                               double integer_tol = kIntegerTol);

}  // namespace cmtc
