#pragma once
#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "cosetmtc/weights.hpp"

namespace cmtc {

// Modular data of one chiral theory: a single SU(N)_K factor, a finite
// product of such factors, or a resolved coset.  Row order follows `labels`;
// the vacuum is always row 0.
struct ModularData {
  std::string type;                  // "wzw" | "product" | "coset"
  std::vector<AlgebraSpec> factors;  // coset: numerator factors then denominator
  // Flat shifted labels per row: concatenation over factors.  Coset rows
  // append the resolution index (>= 1) after the three weight labels.
  std::vector<std::vector<int>> labels;
  Eigen::MatrixXcd S;
  Eigen::VectorXcd T;          // diagonal of the T matrix
  std::vector<double> delta;   // conformal dimensions (coset: fractional part)
  double central_charge = 0.0;
  std::vector<double> qdims;
  std::vector<int> conj_perm;  // row index of the conjugate label

  int size() const { return static_cast<int>(labels.size()); }
  // exp(2 pi i delta_j) = T_j / T_0: the spin phase without the charge shift.
  cd univalence(int j) const;
};

// Modular S matrix from the symmetrized exponential sum
//   entry(a,b) ~ sum_{w in S_N} det(w) exp(2 pi i <w(x(b)), x(a)> / h),
// scaled to unit row norm, then rotated by the unique unit phase making the
// vacuum row real and positive (quantum dimensions are positive).
// Throws numeric_error if the normalization or the unitary/symmetric check
// fails beyond `tol`.
Eigen::MatrixXcd kac_peterson_s_matrix(const AlgebraSpec& spec,
                                       double tol = kStructuralTol);

// (|x(lambda)|^2 - |x(vacuum)|^2) / (2h): the Casimir scaling of the shifted
// label in the normalization where the highest root has squared length 2.
double conformal_dimension(const WeightLabel& lam, const AlgebraSpec& spec);

// K (N^2 - 1) / (K + N); additive over product factors.
double central_charge(const AlgebraSpec& spec);

// T_j = exp(2 pi i (delta_j - c/24)).
Eigen::VectorXcd t_matrix(const std::vector<double>& delta, double central);

ModularData wzw_theory(const AlgebraSpec& spec, double tol = kStructuralTol);

// Product theory: tuple labels (row-major), Kronecker S, multiplied T and
// qdims, added dimensions and central charges.
ModularData tensor_theory(const std::vector<ModularData>& parts);

std::string label_to_string(const std::vector<int>& flat);

// Dense fusion coefficients N_{ab}^c, index order (a, b, c).
struct FusionTensor {
  int dim = 0;
  std::vector<int> coef;
  int operator()(int a, int b, int c) const {
    return coef[(static_cast<size_t>(a) * dim + b) * dim + c];
  }
  int& at(int a, int b, int c) {
    return coef[(static_cast<size_t>(a) * dim + b) * dim + c];
  }
};

// N_{ab}^c = sum_m S_{am} S_{bm} conj(S_{cm}) / S_{0m}.  Every raw value must
// round to a nonnegative integer within `integer_tol` (imaginary part within
// kStructuralTol); otherwise throws numeric_error naming the worst triple.
FusionTensor verlinde_fusion(const ModularData& md,
                             double integer_tol = kIntegerTol);

// Streaming form: for each fixed a, visit(a, rows) receives the rounded
// integer matrix rows(b, c) = N_{ab}^c.  Avoids dim^3 storage; applies the
// same integrality checks as verlinde_fusion.
void verlinde_rows(const ModularData& md, double integer_tol,
                   const std::function<void(int, const Eigen::MatrixXi&)>& visit);

// Maximum deviations of the defining matrix relations plus fusion-derived
// checks.  Relations: S unitary and symmetric, |T| = 1, (ST)^3 = S^2 = C
// written as TSTST = S, conjugation compatibility of T, and the rebuild of
// Y_{ab} = sum_c N_{ab}^c (w_a w_b / w_c) d_c against S_{ab} / S_{00}.
struct AxiomReport {
  double s_unitary = 0, s_symmetric = 0, t_modulus = 0;
  double tstst = 0, s2_conj = 0, t_conj = 0;
  double fusion_integrality = 0, fusion_imag = 0;
  double y_identity = 0;
  double qdim_min = 0;
  bool fusion_nonnegative = true;
  bool pass(double tol = kStructuralTol,
            double integer_tol = kIntegerTol) const;
};

AxiomReport verify_modular_axioms(const ModularData& md,
                                  const FusionTensor& fusion);
// Same checks with the fusion tensor computed on the fly (streaming).
AxiomReport verify_modular_axioms(const ModularData& md,
                                  double integer_tol = kIntegerTol);

// Matrix-relation checks only; the fusion-derived fields stay zero.
AxiomReport modular_relation_report(const ModularData& md);

// Raw streaming spectral sums: for each fixed a, visit(a, raw) receives
// raw(b, c) = sum_m S_{am} S_{bm} conj(S_{cm}) / S_{0m} before any rounding
// or integrality policing.  Building block for custom fusion scans.
void verlinde_raw_rows(
    const ModularData& md,
    const std::function<void(int, const Eigen::MatrixXcd&)>& visit);

}  // namespace cmtc
