#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cosetmtc/coset.hpp"
#include "cosetmtc/serialize.hpp"
#include "cosetmtc/wzw.hpp"

namespace cmtc {

// Branching data of an inclusion: the numerator and denominator theories,
// the set of (i, alpha) pairs appearing in the decompositions of numerator
// sectors over the denominator subalgebra, and the multiplicity of the
// coset vacuum inside each sector (j, beta).
//
// Invariants (enforced by the constructors below):
//   - every positive-multiplicity pair is in `exp`
//   - the (vacuum, vacuum) pair has multiplicity >= 1
struct BranchingTable {
  ModularData num;
  ModularData den;
  std::vector<std::pair<int, int>> exp;            // sorted index pairs
  std::map<std::pair<int, int>, int> vacuum_mult;  // positive entries only

  bool in_exp(int i, int alpha) const;
};

// Branching table of the diagonal coset SU(N)_m1 x SU(N)_m2 / SU(N)_{m1+m2}:
// exp is the set of pairs whose total color vanishes mod N, and the vacuum
// multiplicity is 1 exactly on the rotation orbit of the vacuum pair.
// Levels 0 are allowed (trivial factors); no fixed-point scope gate applies.
BranchingTable diagonal_branching(const CosetSpec& spec);

// JSON form: { "numerator": theory-ref, "denominator": theory-ref,
//              "exp": [[i-label, alpha-label], ...],
//              "vacuum_mult": [[j-label, beta-label, mult], ...] }
// with unshifted Dynkin labels.  Throws schema_error on malformed input,
// unknown labels, nonpositive multiplicities, or invariant violations.
BranchingTable branching_from_json(const nlohmann::json& doc);
ordered_json branching_to_json(const BranchingTable& t);
BranchingTable load_branching_table(const std::string& path);

// b(i, alpha) = sum over positive-multiplicity pairs (j, beta) of
// S_num(i, j) * conj(S_den(alpha, beta)) * mult.  The result must be real;
// an imaginary part above 1e-9 throws numeric_error (inconsistent data).
double b_value(const BranchingTable& t, int i, int alpha);

// b > tolerance on every exp member.
struct KwcReport {
  bool pass = false;
  double min_b = 0.0;
  std::vector<std::pair<std::pair<int, int>, double>> b_values;
  std::vector<std::pair<int, int>> failures;
};
KwcReport check_kwc(const BranchingTable& t, double tol = kStructuralTol);

// Sign condition: S_num(i, j) * conj(S_den(alpha, beta)) >= 0 for every
// (i, alpha) in exp and every positive-multiplicity (j, beta).
struct KwhViolation {
  int i = 0;
  int alpha = 0;
  int j = 0;
  int beta = 0;
  double product = 0.0;  // real part of the offending product
};
struct KwhReport {
  bool pass = false;
  std::vector<KwhViolation> violations;
};
KwhReport check_kwh(const BranchingTable& t, double tol = kStructuralTol);

// Normality condition: every positive-multiplicity pair whose first
// component is the numerator vacuum must have the denominator vacuum as
// its second component.  Witnesses are the offending pairs.
struct Condition2Report {
  bool pass = false;
  std::vector<std::pair<int, int>> witnesses;
};
Condition2Report check_condition2(const BranchingTable& t);

// Ratio identity b(i, vac) / b(vac, vac) = S_num(i, vac) / S_num(vac, vac)
// tested for every numerator sector i with b(i, vac) > tolerance.
struct Prop32Report {
  bool pass = false;
  int qualifying = 0;
  double max_dev = 0.0;
};
Prop32Report prop32_check(const BranchingTable& t, double tol = kStructuralTol);

}  // namespace cmtc
