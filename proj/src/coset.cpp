#include "cosetmtc/coset.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace cmtc {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

double frac_part(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f -= 1.0;
  return f;
}

// Conformal weights of su(n) theories are rationals with denominator
// dividing 2*n*height, so sector spins have a small common denominator.
// Snapping removes the accumulated rounding from the double-precision
// differences; it is skipped if the value is not close to such a rational.
double snap_rational(double x, long denom) {
  const double scaled = x * static_cast<double>(denom);
  const double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) < 1e-6)
    return nearest / static_cast<double>(denom);
  return x;
}

}  // namespace

// Index map of the basic diagram rotation on a factor theory's weights.
std::vector<int> rotation_permutation(const ModularData& part) {
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < part.size(); ++i) index[part.labels[i]] = i;
  std::vector<int> map(part.size());
  for (int i = 0; i < part.size(); ++i)
    map[i] = index.at(diagram_rotation(part.labels[i], part.factors[0], 1));
  return map;
}

void validate_spec(const CosetSpec& spec) {
  if (spec.rank_n < 2)
    throw std::invalid_argument("coset rank must be at least 2");
  if (spec.m1 < 1 || spec.m2 < 1)
    throw std::invalid_argument("coset levels must be at least 1");
}

int CosetData::w0_triple_count() const {
  int total = 0;
  for (const auto& o : orbits)
    if (o.in_w0) total += o.period;
  return total;
}

CosetData build_coset(const CosetSpec& spec, double tol) {
  validate_spec(spec);
  CosetData d;
  d.spec = spec;
  d.part1 = wzw_theory(spec.num1(), tol);
  d.part2 = wzw_theory(spec.num2(), tol);
  d.denom = wzw_theory(spec.den(), tol);
  d.num = tensor_theory({d.part1, d.part2});
  d.n1 = d.part1.size();
  d.n2 = d.part2.size();
  d.nd = d.denom.size();
  d.sig1 = rotation_permutation(d.part1);
  d.sig2 = rotation_permutation(d.part2);
  d.sigd = rotation_permutation(d.denom);

  const int N = spec.rank_n;
  std::vector<int> col1(d.n1), col2(d.n2), cold(d.nd);
  for (int i = 0; i < d.n1; ++i) col1[i] = color(d.part1.labels[i], N);
  for (int i = 0; i < d.n2; ++i) col2[i] = color(d.part2.labels[i], N);
  for (int i = 0; i < d.nd; ++i) cold[i] = color(d.denom.labels[i], N);

  // Orbits of the simultaneous rotation, swept in increasing flattened id
  // so each orbit's first member is its lexicographic minimum and the
  // orbit list is sorted by that minimum.
  const int total = d.n1 * d.n2 * d.nd;
  d.orbit_of.assign(total, -1);
  for (int start = 0; start < total; ++start) {
    if (d.orbit_of[start] >= 0) continue;
    Orbit o;
    int i1, i2, al;
    d.decode(start, i1, i2, al);
    o.in_w0 = (col1[i1] + col2[i2] - cold[al]) % N == 0;
    int cur = start;
    do {
      d.orbit_of[cur] = static_cast<int>(d.orbits.size());
      o.members.push_back(cur);
      d.decode(cur, i1, i2, al);
      const bool w0 = (col1[i1] + col2[i2] - cold[al]) % N == 0;
      if (w0 != o.in_w0)
        throw numeric_error("selection rule not constant on a rotation orbit");
      cur = d.flat_id(d.sig1[i1], d.sig2[i2], d.sigd[al]);
    } while (cur != start);
    o.period = static_cast<int>(o.members.size());
    if (N % o.period != 0)
      throw numeric_error("orbit period does not divide the rotation order");
    o.mult = N / o.period;
    d.orbits.push_back(std::move(o));
  }

  // Scope gate for the resolution of multiplicity > 1 orbits.
  std::vector<int> heavy;
  for (size_t oi = 0; oi < d.orbits.size(); ++oi)
    if (d.orbits[oi].in_w0 && d.orbits[oi].mult > 1)
      heavy.push_back(static_cast<int>(oi));
  if (!heavy.empty()) {
    if (!is_prime(N)) {
      std::ostringstream os;
      os << "out of implemented scope: orbit of multiplicity "
         << d.orbits[heavy[0]].mult << " with non-prime rotation order " << N;
      throw out_of_scope_error(os.str());
    }
    if (heavy.size() > 1) {
      std::ostringstream os;
      os << "out of implemented scope: " << heavy.size()
         << " fixed orbits; the resolved S matrix is derived only for a "
            "unique fixed point";
      throw out_of_scope_error(os.str());
    }
    d.fixed_orbit = heavy[0];
  }

  // Resolution into sectors, with well-definedness checks across members.
  const long delta_denom =
      std::lcm(std::lcm(2L * N * (N + spec.m1), 2L * N * (N + spec.m2)),
               2L * N * (N + spec.m1 + spec.m2));
  d.first_sector.assign(d.orbits.size(), -1);
  for (size_t oi = 0; oi < d.orbits.size(); ++oi) {
    const Orbit& o = d.orbits[oi];
    if (!o.in_w0) continue;
    const int rep = o.members[0];
    const int inum = d.num_index(rep);
    const int al = d.den_index(rep);
    const double dtot = d.num.qdims[inum] * d.denom.qdims[al];
    const double delta = snap_rational(
        frac_part(d.num.delta[inum] - d.denom.delta[al]), delta_denom);
    const cd univ = std::polar(1.0, kTwoPi * delta);
    for (int m : o.members) {
      const int mi = d.num_index(m), ma = d.den_index(m);
      const double dm = d.num.qdims[mi] * d.denom.qdims[ma];
      const cd um = std::polar(
          1.0, kTwoPi * frac_part(d.num.delta[mi] - d.denom.delta[ma]));
      if (std::abs(dm - dtot) > 1e-12 * std::max(1.0, std::abs(dtot)) ||
          std::abs(um - univ) > 1e-11)
        throw numeric_error(
            "sector data not constant across an orbit's members");
    }
    d.first_sector[oi] = static_cast<int>(d.sectors.size());
    for (int k = 0; k < o.mult; ++k)
      d.sectors.push_back(CosetSector{static_cast<int>(oi), k,
                                      dtot / o.mult, univ, delta});
  }
  if (d.sectors.empty() || d.sectors[0].orbit != d.orbit_of[0])
    throw numeric_error("vacuum sector is not first");

  // Resolved modular data.
  ModularData& md = d.md;
  md.type = "coset";
  md.factors = {spec.num1(), spec.num2(), spec.den()};
  md.central_charge = d.num.central_charge - d.denom.central_charge;
  const int n = static_cast<int>(d.sectors.size());
  md.labels.reserve(n);
  md.delta.resize(n);
  md.qdims.resize(n);
  md.T.resize(n);
  md.conj_perm.resize(n);
  const cd om = std::polar(1.0, -kTwoPi * md.central_charge / 24.0);
  for (int s = 0; s < n; ++s) {
    const CosetSector& sec = d.sectors[s];
    const int rep = d.orbits[sec.orbit].members[0];
    int i1, i2, al;
    d.decode(rep, i1, i2, al);
    std::vector<int> lab = d.part1.labels[i1];
    lab.insert(lab.end(), d.part2.labels[i2].begin(), d.part2.labels[i2].end());
    lab.insert(lab.end(), d.denom.labels[al].begin(), d.denom.labels[al].end());
    lab.push_back(sec.res_index + 1);
    md.labels.push_back(std::move(lab));
    md.delta[s] = sec.delta;
    md.qdims[s] = sec.qdim;
    md.T[s] = sec.univalence * om;
    if (sec.orbit == d.fixed_orbit) {
      md.conj_perm[s] = s;
    } else {
      const int ci = d.flat_id(d.part1.conj_perm[i1], d.part2.conj_perm[i2],
                               d.denom.conj_perm[al]);
      md.conj_perm[s] = d.first_sector[d.orbit_of[ci]];
    }
  }

  md.S.resize(n, n);
  const double dN = static_cast<double>(N);
  cd s_ff = 0;
  if (d.fixed_orbit >= 0) {
    const int rep = d.orbits[d.fixed_orbit].members[0];
    s_ff = dN * d.num.S(d.num_index(rep), d.num_index(rep)) *
           std::conj(d.denom.S(d.den_index(rep), d.den_index(rep)));
  }
  for (int a = 0; a < n; ++a) {
    const CosetSector& sa = d.sectors[a];
    const int ra = d.orbits[sa.orbit].members[0];
    for (int b = 0; b < n; ++b) {
      const CosetSector& sb = d.sectors[b];
      const int rb = d.orbits[sb.orbit].members[0];
      const bool fa = sa.orbit == d.fixed_orbit;
      const bool fb = sb.orbit == d.fixed_orbit;
      if (fa && fb) {
        md.S(a, b) = (sa.res_index == sb.res_index ? 1.0 : 0.0) +
                     (s_ff - dN) / (dN * dN);
      } else {
        const cd base = d.num.S(d.num_index(ra), d.num_index(rb)) *
                        std::conj(d.denom.S(d.den_index(ra), d.den_index(rb)));
        md.S(a, b) = (fa || fb) ? base : dN * base;
      }
    }
  }

  // The entry formulas must not depend on which member represents an
  // orbit; verify across every pair of selected triples.
  {
    std::vector<int> w0;
    for (const auto& o : d.orbits)
      if (o.in_w0) w0.insert(w0.end(), o.members.begin(), o.members.end());
    for (int g : w0) {
      const int og = d.orbit_of[g];
      const int rg = d.orbits[og].members[0];
      for (int gp : w0) {
        const int ogp = d.orbit_of[gp];
        const int rgp = d.orbits[ogp].members[0];
        const cd v = d.num.S(d.num_index(g), d.num_index(gp)) *
                     std::conj(d.denom.S(d.den_index(g), d.den_index(gp)));
        const cd v0 = d.num.S(d.num_index(rg), d.num_index(rgp)) *
                      std::conj(d.denom.S(d.den_index(rg), d.den_index(rgp)));
        if (std::abs(v - v0) > tol)
          throw numeric_error(
              "resolved S entry depends on the orbit representative");
      }
    }
  }

  d.fus1 = verlinde_fusion(d.part1);
  d.fus2 = (spec.m2 == spec.m1) ? d.fus1 : verlinde_fusion(d.part2);
  d.fusd = verlinde_fusion(d.denom);
  return d;
}

SigmaTildeReport sigma_tilde_check(const CosetData& d) {
  // All sums run in extended precision: the global dimension is large, so
  // the 1e-9 absolute comparisons leave little headroom for rounding.
  using cld = std::complex<long double>;
  constexpr long double kTwoPiL = 6.28318530717958647692528676655900577L;
  SigmaTildeReport r;
  const int N = d.spec.rank_n;
  const long denom =
      std::lcm(std::lcm(2L * N * (N + d.spec.m1), 2L * N * (N + d.spec.m2)),
               2L * N * (N + d.spec.m1 + d.spec.m2));
  // Spins are rationals over `denom`; taking the phase from the integer
  // numerator removes the rounding of the stored double spin.
  const auto spin_angle = [&](double x) -> long double {
    const double scaled = x * static_cast<double>(denom);
    const double k = std::round(scaled);
    if (std::abs(scaled - k) < 1e-6)
      return -kTwoPiL * static_cast<long double>(k) / denom;
    return -kTwoPiL * x;
  };
  cld direct = 0;
  long double sum_d2 = 0;
  for (const auto& sec : d.sectors) {
    const long double q2 =
        static_cast<long double>(sec.qdim) * sec.qdim;
    const long double ang = spin_angle(sec.delta);
    direct += q2 * cld(std::cos(ang), std::sin(ang));
    sum_d2 += q2;
  }
  r.direct = cd(static_cast<double>(direct.real()),
                static_cast<double>(direct.imag()));
  const double cdiff = d.num.central_charge - d.denom.central_charge;
  r.closed = std::polar(1.0, -6.0 * (kTwoPi / 2.0) * cdiff / 24.0) /
             (static_cast<double>(N) * d.num.S(0, 0) * d.denom.S(0, 0));
  r.closed_dev = std::abs(r.direct - r.closed);
  r.norm_dev = static_cast<double>(std::abs(std::norm(direct) - sum_d2));

  cld w0_sum = 0, w1_sum = 0;
  for (int flat = 0; flat < d.n1 * d.n2 * d.nd; ++flat) {
    const int inum = d.num_index(flat), al = d.den_index(flat);
    const long double dg = static_cast<long double>(d.num.qdims[inum]) *
                           d.denom.qdims[al];
    const long double ang = spin_angle(d.num.delta[inum] - d.denom.delta[al]);
    const cld term = dg * dg * cld(std::cos(ang), std::sin(ang));
    if (d.orbits[d.orbit_of[flat]].in_w0)
      w0_sum += term;
    else
      w1_sum += term;
  }
  r.w1_abs = static_cast<double>(std::abs(w1_sum));
  r.sector_vs_w0 =
      static_cast<double>(std::abs(direct - w0_sum / static_cast<long double>(N)));
  return r;
}

long orbit_fusion(const CosetData& d, int A, int B, int C) {
  const Orbit& oa = d.orbits[A];
  const Orbit& ob = d.orbits[B];
  const Orbit& oc = d.orbits[C];
  int a1, a2, aal, b1, b2, bal, c1, c2, cal;
  d.decode(oa.members[0], a1, a2, aal);
  d.decode(ob.members[0], b1, b2, bal);
  d.decode(oc.members[0], c1, c2, cal);
  long total = 0;
  for (int s = 0; s < d.spec.rank_n; ++s) {
    total += static_cast<long>(d.fus1(a1, b1, c1)) * d.fus2(a2, b2, c2) *
             d.fusd(aal, bal, cal);
    c1 = d.sig1[c1];
    c2 = d.sig2[c2];
    cal = d.sigd[cal];
  }
  return total;
}

double fixed_point_fusion_value(const CosetData& d, int i, int j, int k) {
  if (d.fixed_orbit < 0)
    throw std::invalid_argument("coset has no fixed point to resolve");
  const int N = d.spec.rank_n;
  const double dN = static_cast<double>(N);
  const long fff = orbit_fusion(d, d.fixed_orbit, d.fixed_orbit, d.fixed_orbit);
  // S_FF and S_1F taken at the unresolved fixed point F = sum of its
  // components, i.e. N times the per-component column entries.
  const int rep = d.orbits[d.fixed_orbit].members[0];
  const cd s_ff = dN * d.num.S(d.num_index(rep), d.num_index(rep)) *
                  std::conj(d.denom.S(d.den_index(rep), d.den_index(rep)));
  const cd s_1f = dN * d.num.S(0, d.num_index(rep)) *
                  std::conj(d.denom.S(0, d.den_index(rep)));
  if (std::abs(s_ff.imag()) > kStructuralTol ||
      std::abs(s_1f.imag()) > kStructuralTol)
    throw numeric_error("fixed-point S entries are not real");
  const double djk = j == k ? 1 : 0, dji = j == i ? 1 : 0,
               dik = i == k ? 1 : 0;
  const double dijk = (i == j && j == k) ? 1 : 0;
  return static_cast<double>(fff) / (dN * dN * dN) +
         s_ff.real() / s_1f.real() * ((djk + dji + dik) / dN - 3.0 / (dN * dN)) +
         1.0 / s_1f.real() *
             (dN * dijk + 2.0 / dN - djk - dji - dik);
}

int fixed_point_fusion(const CosetData& d, int i, int j, int k,
                       double integer_tol) {
  const double closed = fixed_point_fusion_value(d, i, j, k);
  const int base = d.first_sector[d.fixed_orbit];
  const int fi = base + i, fj = base + j, fk = base + k;
  cd acc = 0;
  for (int m = 0; m < d.md.size(); ++m)
    acc += d.md.S(fi, m) * d.md.S(fj, m) * std::conj(d.md.S(fk, m)) /
           d.md.S(0, m);
  if (std::abs(acc.imag()) > kStructuralTol)
    throw numeric_error("spectral fixed-point fusion value is not real");
  if (std::abs(acc.real() - closed) > integer_tol)
    throw numeric_error(
        "fixed-point fusion mismatch between the closed formula and the "
        "spectral value");
  const long r = std::lround(closed);
  if (r < 0 || std::abs(closed - static_cast<double>(r)) > integer_tol)
    throw numeric_error("fixed-point fusion is not a nonnegative integer");
  return static_cast<int>(r);
}

CosetVerifyReport coset_verify(const CosetData& d, double integer_tol) {
  (void)integer_tol;  // thresholds are applied by the report's pass()
  CosetVerifyReport r;
  const ModularData& md = d.md;
  const int n = md.size();
  r.axioms = modular_relation_report(md);

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(md.S);
  const auto& sv = svd.singularValues();
  r.y_condition = sv(0) / sv(sv.size() - 1);

  for (int s = 0; s < n; ++s)
    if (d.sectors[s].orbit == d.fixed_orbit && md.conj_perm[s] != s)
      r.fixed_self_conjugate = false;

  // Selected orbits in sector order, and each sector's position in it.
  std::vector<int> w0_list;
  std::vector<int> ordinal(n);
  for (int s = 0; s < n; ++s) {
    if (s == 0 || d.sectors[s].orbit != d.sectors[s - 1].orbit)
      w0_list.push_back(d.sectors[s].orbit);
    ordinal[s] = static_cast<int>(w0_list.size()) - 1;
  }
  const int m = static_cast<int>(w0_list.size());

  // One spectral pass: fusion integrality, the Y rebuild, per-orbit fusion
  // aggregates against the orbit sums, and the fixed-point block against
  // the closed formula.
  std::vector<cd> omega(n);
  for (int jj = 0; jj < n; ++jj) omega[jj] = md.univalence(jj);
  const cd s00 = md.S(0, 0);
  Eigen::MatrixXi agg = Eigen::MatrixXi::Zero(m, m);
  int cur = 0;
  const auto flush = [&](int aord) {
    for (int B = 0; B < m; ++B)
      for (int C = 0; C < m; ++C) {
        const long expect = orbit_fusion(d, w0_list[aord], w0_list[B],
                                         w0_list[C]);
        r.orbit_aggregate_dev =
            std::max(r.orbit_aggregate_dev,
                     std::abs(static_cast<double>(agg(B, C) - expect)));
      }
  };
  verlinde_raw_rows(md, [&](int a, const Eigen::MatrixXcd& raw) {
    if (ordinal[a] != cur) {
      flush(cur);
      agg.setZero();
      cur = ordinal[a];
    }
    const bool a_fixed = d.sectors[a].orbit == d.fixed_orbit;
    for (int b = 0; b < n; ++b) {
      cd y = 0;
      for (int c = 0; c < n; ++c) {
        const cd v = raw(b, c);
        long k = std::lround(v.real());
        if (k < 0) {
          r.axioms.fusion_nonnegative = false;
          k = 0;
        }
        r.axioms.fusion_integrality =
            std::max(r.axioms.fusion_integrality,
                     std::abs(v.real() - std::lround(v.real())));
        r.axioms.fusion_imag =
            std::max(r.axioms.fusion_imag, std::abs(v.imag()));
        agg(ordinal[b], ordinal[c]) += static_cast<int>(k);
        if (k != 0)
          y += static_cast<double>(k) * omega[a] * omega[b] / omega[c] *
               md.qdims[c];
        if (a_fixed && d.sectors[b].orbit == d.fixed_orbit &&
            d.sectors[c].orbit == d.fixed_orbit) {
          const double closed = fixed_point_fusion_value(
              d, d.sectors[a].res_index, d.sectors[b].res_index,
              d.sectors[c].res_index);
          r.fixed_formula_dev =
              std::max(r.fixed_formula_dev, std::abs(v.real() - closed));
        }
      }
      r.axioms.y_identity =
          std::max(r.axioms.y_identity, std::abs(y - md.S(a, b) / s00));
    }
  });
  flush(cur);
  return r;
}

}  // namespace cmtc
