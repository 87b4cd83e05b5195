#include "doctest.h"

#include "cosetmtc/serialize.hpp"

using namespace cmtc;

namespace {

bool identical(const ModularData& a, const ModularData& b) {
  if (a.type != b.type || a.labels != b.labels || a.delta != b.delta ||
      a.central_charge != b.central_charge || a.qdims.size() != b.qdims.size())
    return false;
  if (!(a.factors == b.factors)) return false;
  if ((a.S - b.S).cwiseAbs().maxCoeff() != 0.0) return false;
  if ((a.T - b.T).cwiseAbs().maxCoeff() != 0.0) return false;
  return a.conj_perm == b.conj_perm;
}

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("complex entries are [re, im] pairs") {
  const cd z(0.25, -1.5);
  const auto j = complex_to_json(z);
  CHECK(j.is_array());
  CHECK(j.size() == 2);
  CHECK(complex_from_json(j) == z);
  CHECK_THROWS_AS((void)complex_from_json(nlohmann::json::parse("[1.0]")),
                  schema_error);
  CHECK_THROWS_AS((void)complex_from_json(nlohmann::json::parse("\"z\"")),
                  schema_error);
}

TEST_CASE("labels cross the boundary unshifted") {
  const auto md = wzw_theory(AlgebraSpec{3, 2});
  const auto u = unshifted_labels(md);
  CHECK(u[0] == std::vector<int>{0, 0});  // vacuum
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < u[i].size(); ++j)
      CHECK(u[i][j] == md.labels[i][j] - 1);
  CHECK(weight_width(md) == 2);
}

TEST_CASE("modular data round-trips bit for bit") {
  for (const AlgebraSpec spec :
       {AlgebraSpec{2, 3}, AlgebraSpec{3, 2}, AlgebraSpec{2, 8}}) {
    const auto md = wzw_theory(spec);
    const auto text = modular_to_json(md).dump();
    const auto back = modular_from_json(nlohmann::json::parse(text));
    CHECK(identical(md, back));
    // a second emit from the re-ingested value is byte-identical
    CHECK(modular_to_json(back).dump() == text);
  }
  const auto prod =
      tensor_theory({wzw_theory(AlgebraSpec{2, 1}), wzw_theory(AlgebraSpec{3, 1})});
  const auto text = modular_to_json(prod).dump();
  const auto back = modular_from_json(nlohmann::json::parse(text));
  CHECK(identical(prod, back));
  CHECK(back.type == "product");
  CHECK(back.labels[1].size() == 3u);
}

TEST_CASE("malformed documents are rejected with schema errors") {
  const auto md = wzw_theory(AlgebraSpec{2, 2});
  const auto good = modular_to_json(md);

  SUBCASE("missing field") {
    for (const char* key : {"type", "factors", "labels", "S", "T", "delta", "c"}) {
      auto bad = good;
      bad.erase(key);
      CHECK_THROWS_AS((void)modular_from_json(bad), schema_error);
    }
  }
  SUBCASE("unknown type") {
    auto bad = good;
    bad["type"] = "virasoro";
    CHECK_THROWS_AS((void)modular_from_json(bad), schema_error);
  }
  SUBCASE("label width mismatch") {
    auto bad = good;
    bad["labels"][1] = nlohmann::json::array({0, 0});
    CHECK_THROWS_AS((void)modular_from_json(bad), schema_error);
  }
  SUBCASE("ragged S matrix") {
    auto bad = good;
    bad["S"][0].erase(0);
    CHECK_THROWS_AS((void)modular_from_json(bad), schema_error);
  }
  SUBCASE("T length mismatch") {
    auto bad = good;
    bad["T"].erase(0);
    CHECK_THROWS_AS((void)modular_from_json(bad), schema_error);
  }
  SUBCASE("an S without permutation square is rejected") {
    auto bad = good;
    for (auto& row : bad["S"])
      for (auto& entry : row) entry = complex_to_json(cd(0.5, 0.0));
    CHECK_THROWS_AS((void)modular_from_json(bad), schema_error);
  }
}

TEST_CASE("theory references rebuild the theory") {
  const auto md = wzw_theory(AlgebraSpec{3, 1});
  const auto back = theory_from_ref(theory_ref(md));
  CHECK(identical(md, back));

  const auto prod =
      tensor_theory({wzw_theory(AlgebraSpec{2, 2}), wzw_theory(AlgebraSpec{2, 2})});
  const auto pback = theory_from_ref(theory_ref(prod));
  CHECK(identical(prod, pback));

  CHECK_THROWS_AS((void)theory_from_ref(nlohmann::json::parse(
                      R"({"type":"coset","factors":[{"n":2,"level":1}]})")),
                  schema_error);
  CHECK_THROWS_AS((void)theory_from_ref(nlohmann::json::parse("{}")),
                  schema_error);
}

TEST_CASE("fusion listing keeps only nonzero coefficients") {
  const auto md = wzw_theory(AlgebraSpec{2, 2});
  const auto f = verlinde_fusion(md);
  const auto rows = fusion_to_json(md, f);
  int nonzero = 0;
  for (int a = 0; a < f.dim; ++a)
    for (int b = 0; b < f.dim; ++b)
      for (int c = 0; c < f.dim; ++c)
        if (f(a, b, c) != 0) ++nonzero;
  CHECK(static_cast<int>(rows.size()) == nonzero);
  // vacuum times vacuum lands on the vacuum with coefficient one
  CHECK(rows[0]["a"] == nlohmann::json::array({0}));
  CHECK(rows[0]["b"] == nlohmann::json::array({0}));
  CHECK(rows[0]["c"] == nlohmann::json::array({0}));
  CHECK(rows[0]["n"] == 1);
}

}  // TEST_SUITE
