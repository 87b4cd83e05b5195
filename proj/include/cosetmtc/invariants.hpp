#pragma once

#include "cosetmtc/coset.hpp"
#include "cosetmtc/wzw.hpp"

namespace cmtc {

// Reshetikhin-Turaev invariant of the lens space L(p,1), presented by
// surgery on a single unknot with framing p, normalized so the 3-sphere
// (p = ±1) evaluates to 1/D with D = sqrt(sum_j d_j^2):
//   p = 0:   1                                      (S^2 x S^1)
//   p != 0:  sum_j omega_j^p d_j^2 / (Delta * D)
// where omega_j = T_j / T_0 and Delta = sum_j omega_j^{sign p} d_j^2 is the
// Gauss sum of the framing's orientation.  Throws numeric_error
// "anomaly factor undefined" when |Delta| < tol.
cd lens_invariant(const ModularData& md, int p, double tol = kStructuralTol);

// One orientation of the factorization probe: the three lens invariants of
// the numerator product theory, the denominator theory, and the coset, the
// combination ratio = tau_num * conj(tau_den) / tau_coset, and the integer
// c minimizing the distance of the ratio from N^c, with that residual.
// The ratio is reported, never asserted.
struct ProbeOrientation {
  int p = 0;
  cd tau_num;
  cd tau_den;
  cd tau_coset;
  cd ratio;
  int c = 0;
  double residual = 0.0;
};

// Factorization report for L(p,1) and its orientation reversal L(-p,1);
// both are emitted because the matching of the univalence convention to an
// orientation is not fixed.
struct LensProbe {
  int rank_n = 0;
  ProbeOrientation forward;
  ProbeOrientation reverse;
};

LensProbe factorization_probe(const CosetSpec& spec, int p,
                              double tol = kStructuralTol);

// Same probe on already-built coset data.
LensProbe factorization_probe(const CosetData& d, int p,
                              double tol = kStructuralTol);

}  // namespace cmtc
