#pragma once
#include <vector>

#include "cosetmtc/common.hpp"

namespace cmtc {

// SU(N) at level K.  All weight bookkeeping happens at height h = N + K.
struct AlgebraSpec {
  int rank_n = 0;  // the N of SU(N)
  int level = 0;   // the K
  int height() const { return rank_n + level; }
  bool operator==(const AlgebraSpec&) const = default;
};

// Shifted Dynkin labels: N-1 entries, each >= 1, summing below the height.
// Unshifted (physics-convention) labels appear only at the JSON boundary.
using WeightLabel = std::vector<int>;

// Throws std::invalid_argument unless N >= 2 and K >= 0.
void validate_spec(const AlgebraSpec& spec);

bool valid_weight(const WeightLabel& lam, const AlgebraSpec& spec);

// All valid shifted labels in lexicographic order; the vacuum (all ones)
// comes first.  Count is binom(h-1, N-1).
std::vector<WeightLabel> enumerate_weights(const AlgebraSpec& spec);

// sum_i (lambda_i - 1) * i mod N.  Vanishes exactly on the root lattice.
int color(const WeightLabel& lam, int rank_n);
bool in_root_lattice(const WeightLabel& lam, int rank_n);

// Rotation of the affine Dynkin diagram, applied `power` times (the rotation
// has order N): lambda -> (h - sum_j lambda_j, lambda_1, ..., lambda_{N-2}).
WeightLabel diagram_rotation(const WeightLabel& lam, const AlgebraSpec& spec,
                             int power);

// Label reversal: the diagram flip realizing conjugation.  Involutive.
WeightLabel conjugate(const WeightLabel& lam);

// Traceless coordinates of a shifted label: partial sums
// l_j = sum_{i=j..N-1} lambda_i (l_N = 0), centered so the N entries sum to
// zero.  The symmetric group S_N acts by permuting coordinates and the
// pairing used in the S-matrix sum is the Euclidean dot product.
std::vector<double> euclidean_coords(const WeightLabel& lam, int rank_n);

}  // namespace cmtc
