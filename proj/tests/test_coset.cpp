#include "doctest.h"

#include <cmath>

#include "cosetmtc/coset.hpp"
#include "cosetmtc/serialize.hpp"

using namespace cmtc;

namespace {

double cabs(const cd& z) { return std::abs(z); }

int w0_orbit_count(const CosetData& d) {
  int m = 0;
  for (const auto& o : d.orbits)
    if (o.in_w0) ++m;
  return m;
}

}  // namespace

TEST_SUITE("coset") {

TEST_CASE("selection rule counting") {
  SUBCASE("su(3) level 1 squared over level 2") {
    const auto d = build_coset(CosetSpec{3, 1, 1});
    CHECK(d.n1 * d.n2 * d.nd == 54);
    CHECK(d.w0_triple_count() == 18);
    CHECK(w0_orbit_count(d) == 6);
    CHECK(d.sectors.size() == 6u);
    CHECK(d.fixed_orbit == -1);
    // vacuum orbit: period equal to the rotation order, distinct members
    const Orbit& vac = d.orbits[d.orbit_of[0]];
    CHECK(vac.period == 3);
    CHECK(vac.mult == 1);
    CHECK(vac.in_w0);
  }
  SUBCASE("su(2) level 2 squared over level 4") {
    const auto d = build_coset(CosetSpec{2, 2, 2});
    CHECK(d.n1 * d.n2 * d.nd == 45);
    CHECK(d.w0_triple_count() == 23);
    CHECK(w0_orbit_count(d) == 12);
    CHECK(d.sectors.size() == 13u);
    REQUIRE(d.fixed_orbit >= 0);
    const Orbit& f = d.orbits[d.fixed_orbit];
    CHECK(f.period == 1);
    CHECK(f.mult == 2);
    int i1, i2, al;
    d.decode(f.members[0], i1, i2, al);
    CHECK(d.part1.labels[i1] == std::vector<int>{2});
    CHECK(d.part2.labels[i2] == std::vector<int>{2});
    CHECK(d.denom.labels[al] == std::vector<int>{3});
  }
}

TEST_CASE("smallest fermionic coset matches its textbook modular data") {
  const auto d = build_coset(CosetSpec{2, 1, 1});
  REQUIRE(d.sectors.size() == 3u);
  const auto& md = d.md;
  CHECK(md.central_charge == doctest::Approx(0.5).epsilon(1e-12));
  // order: vacuum, ((1),(1);(3)), ((1),(2);(2))
  CHECK(md.labels[1] == std::vector<int>{1, 1, 3, 1});
  CHECK(md.labels[2] == std::vector<int>{1, 2, 2, 1});
  CHECK(md.delta[0] == doctest::Approx(0.0));
  CHECK(md.delta[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(md.delta[2] == doctest::Approx(0.0625).epsilon(1e-12));
  const double r = std::sqrt(2.0) / 2.0;
  const double want[3][3] = {{0.5, 0.5, r}, {0.5, 0.5, -r}, {r, -r, 0.0}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(cabs(md.S(a, b) - cd(want[a][b], 0)) < 1e-12);
  CHECK(md.qdims[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cabs(md.T[0] - std::polar(1.0, -kTwoPi * 0.5 / 24.0)) < 1e-12);
  const auto rep = coset_verify(d);
  CHECK(rep.pass(1e-9, 1e-6));
  CHECK(rep.y_condition == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fixed point resolution data") {
  const auto d = build_coset(CosetSpec{2, 2, 2});
  const auto& md = d.md;
  const int f0 = d.first_sector[d.fixed_orbit];
  REQUIRE(f0 >= 0);
  const int f1 = f0 + 1;

  CHECK(md.central_charge == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.sectors[f0].qdim == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.sectors[f1].qdim == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.sectors[f0].delta == doctest::Approx(1.0 / 24).epsilon(1e-12));

  // vacuum column entry at the fixed point, and the fixed block itself
  CHECK(cabs(md.S(0, f0) - cd(0.5 / std::sqrt(3.0), 0)) < 1e-12);
  CHECK(cabs(md.S(0, 0) - cd(0.25 / std::sqrt(3.0), 0)) < 1e-12);
  CHECK(cabs(md.S(f0, f0) - cd(0.5, 0)) < 1e-12);
  CHECK(cabs(md.S(f0, f1) - cd(-0.5, 0)) < 1e-12);
  CHECK(cabs(md.S(f1, f1) - cd(0.5, 0)) < 1e-12);

  // unit univalence at the fixed point and self-conjugacy
  CHECK(cabs(md.T[f0] - cd(1, 0)) < 1e-9);
  CHECK(md.conj_perm[f0] == f0);
  CHECK(md.conj_perm[f1] == f1);

  double d2 = 0;
  for (double q : md.qdims) d2 += q * q;
  CHECK(d2 == doctest::Approx(48.0).epsilon(1e-12));
}

TEST_CASE("resolved axioms hold for the fixed-point coset") {
  const auto d = build_coset(CosetSpec{2, 2, 2});
  const auto rep = coset_verify(d);
  CHECK(rep.pass(1e-9, 1e-6));
  CHECK(rep.axioms.s_unitary < 1e-9);
  CHECK(rep.axioms.tstst < 1e-9);
  CHECK(rep.axioms.s2_conj < 1e-9);
  CHECK(rep.axioms.y_identity < 1e-9);
  CHECK(rep.orbit_aggregate_dev == 0.0);
  CHECK(rep.fixed_formula_dev < 1e-6);
  CHECK(rep.fixed_self_conjugate);
  // every fusion number among the two resolution components vanishes here
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) CHECK(fixed_point_fusion(d, i, j, k) == 0);
}

TEST_CASE("gauss sums and vanishing lemma") {
  for (const CosetSpec spec :
       {CosetSpec{2, 1, 1}, CosetSpec{3, 1, 1}, CosetSpec{2, 2, 2}}) {
    const auto d = build_coset(spec);
    const auto r = sigma_tilde_check(d);
    INFO("N=", spec.rank_n, " m1=", spec.m1, " m2=", spec.m2);
    CHECK(r.closed_dev < 1e-9);
    CHECK(r.norm_dev < 1e-9);
    CHECK(r.w1_abs < 1e-9);
    CHECK(r.sector_vs_w0 < 1e-9);
    CHECK(r.pass());
  }
}

TEST_CASE("orbit fusion behaves like a fusion ring on orbits") {
  const auto d = build_coset(CosetSpec{2, 2, 2});
  std::vector<int> w0;
  for (size_t oi = 0; oi < d.orbits.size(); ++oi)
    if (d.orbits[oi].in_w0) w0.push_back(static_cast<int>(oi));
  const int vac = d.orbit_of[0];
  for (int B : w0)
    for (int C : w0) {
      const long expect = (B == C) ? d.orbits[B].mult : 0;
      CHECK(orbit_fusion(d, vac, B, C) == expect);
      CHECK(orbit_fusion(d, B, vac, C) == expect);
    }
  for (int A : w0)
    for (int B : w0)
      for (int C : w0)
        CHECK(orbit_fusion(d, A, B, C) == orbit_fusion(d, B, A, C));
}

TEST_CASE("scope gate and input validation") {
  CHECK_THROWS_AS((void)build_coset(CosetSpec{4, 2, 2}), out_of_scope_error);
  CHECK_THROWS_AS((void)build_coset(CosetSpec{2, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS((void)build_coset(CosetSpec{1, 1, 1}), std::invalid_argument);
}

TEST_CASE("coset modular data round-trips through json") {
  const auto d = build_coset(CosetSpec{2, 1, 1});
  CHECK(weight_width(d.md) == 3);
  const auto text = modular_to_json(d.md).dump();
  const auto back = modular_from_json(nlohmann::json::parse(text));
  CHECK(back.type == "coset");
  CHECK(back.labels == d.md.labels);
  CHECK((back.S - d.md.S).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.conj_perm == d.md.conj_perm);
}

TEST_CASE("large prime fixed point: su(3) level 3 squared over level 6") {
  const auto d = build_coset(CosetSpec{3, 3, 3});
  CHECK(d.n1 * d.n2 * d.nd == 2800);
  CHECK(d.w0_triple_count() == 934);
  CHECK(w0_orbit_count(d) == 312);
  REQUIRE(d.fixed_orbit >= 0);
  CHECK(d.sectors.size() == 314u);
  int i1, i2, al;
  d.decode(d.orbits[d.fixed_orbit].members[0], i1, i2, al);
  CHECK(d.part1.labels[i1] == std::vector<int>{2, 2});
  CHECK(d.part2.labels[i2] == std::vector<int>{2, 2});
  CHECK(d.denom.labels[al] == std::vector<int>{3, 3});

  const int f0 = d.first_sector[d.fixed_orbit];
  CHECK(d.sectors[f0].delta == doctest::Approx(1.0 / 9).epsilon(1e-12));
  CHECK(d.md.central_charge == doctest::Approx(8.0 / 3).epsilon(1e-12));
  CHECK(cabs(d.md.T[f0] - cd(1, 0)) < 1e-9);

  const auto sig = sigma_tilde_check(d);
  CHECK(sig.closed_dev < 1e-9);
  CHECK(sig.norm_dev < 1e-9);
  CHECK(sig.w1_abs < 1e-9);
  CHECK(sig.sector_vs_w0 < 1e-9);

  const auto rep = coset_verify(d);
  CHECK(rep.pass(1e-9, 1e-6));
  CHECK(rep.axioms.s_unitary < 1e-9);
  CHECK(rep.axioms.tstst < 1e-9);
  CHECK(rep.axioms.y_identity < 1e-9);
  CHECK(rep.orbit_aggregate_dev == 0.0);
  CHECK(rep.fixed_formula_dev < 1e-6);
  CHECK(rep.fixed_self_conjugate);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int v = fixed_point_fusion(d, i, j, k);
        CHECK(v >= 0);
        CHECK(v == fixed_point_fusion(d, j, i, k));
      }
}

}  // TEST_SUITE
