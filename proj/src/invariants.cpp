#include "cosetmtc/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace cmtc {

cd lens_invariant(const ModularData& md, int p, double tol) {
  if (p == 0) return 1.0;
  const double sign = p > 0 ? 1.0 : -1.0;
  double d2 = 0.0;
  cd gauss = 0.0;
  cd sum = 0.0;
  for (int j = 0; j < md.size(); ++j) {
    const double w2 = md.qdims[j] * md.qdims[j];
    // The twist from the T entries themselves (not the stored dimensions),
    // so that conjugating T — reversing orientation — conjugates the value.
    const cd w = md.T(j) / md.T(0);
    d2 += w2;
    gauss += std::pow(w, sign) * w2;
    sum += std::pow(w, static_cast<double>(p)) * w2;
  }
  if (std::abs(gauss) < tol) throw numeric_error("anomaly factor undefined");
  return sum / (gauss * std::sqrt(d2));
}

namespace {

ProbeOrientation probe_orientation(const CosetData& d, int p, double tol) {
  ProbeOrientation o;
  o.p = p;
  o.tau_num = lens_invariant(d.num, p, tol);
  o.tau_den = lens_invariant(d.denom, p, tol);
  o.tau_coset = lens_invariant(d.md, p, tol);
  if (std::abs(o.tau_coset) < tol)
    throw numeric_error(
        "coset lens invariant vanishes; factorization ratio undefined");
  o.ratio = o.tau_num * std::conj(o.tau_den) / o.tau_coset;

  const double base = static_cast<double>(d.spec.rank_n);
  const double estimate =
      std::clamp(std::log(std::abs(o.ratio)) / std::log(base), -64.0, 64.0);
  o.c = static_cast<int>(std::lround(estimate));
  o.residual = std::abs(o.ratio - std::pow(base, o.c));
  return o;
}

}  // namespace

LensProbe factorization_probe(const CosetSpec& spec, int p, double tol) {
  return factorization_probe(build_coset(spec), p, tol);
}

LensProbe factorization_probe(const CosetData& d, int p, double tol) {
  LensProbe probe;
  probe.rank_n = d.spec.rank_n;
  probe.forward = probe_orientation(d, p, tol);
  probe.reverse = probe_orientation(d, -p, tol);
  return probe;
}

}  // namespace cmtc
