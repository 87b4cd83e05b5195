#include "cosetmtc/serialize.hpp"

#include <cmath>

namespace cmtc {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw schema_error("modular data json: " + what);
}

std::vector<AlgebraSpec> factors_from_json(const nlohmann::json& j) {
  require(j.is_array() && !j.empty(), "factors must be a nonempty array");
  std::vector<AlgebraSpec> out;
  for (const auto& f : j) {
    require(f.is_object() && f.contains("n") && f.contains("level"),
            "factor needs integer fields n and level");
    require(f["n"].is_number_integer() && f["level"].is_number_integer(),
            "factor fields must be integers");
    out.push_back(AlgebraSpec{f["n"].get<int>(), f["level"].get<int>()});
  }
  return out;
}

ordered_json factors_to_json(const std::vector<AlgebraSpec>& factors) {
  ordered_json arr = ordered_json::array();
  for (const auto& f : factors)
    arr.push_back(ordered_json{{"n", f.rank_n}, {"level", f.level}});
  return arr;
}

}  // namespace

ordered_json complex_to_json(const cd& z) {
  return ordered_json::array({z.real(), z.imag()});
}

cd complex_from_json(const nlohmann::json& j) {
  if (!(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()))
    throw schema_error("complex value must be a [re, im] pair");
  return cd(j[0].get<double>(), j[1].get<double>());
}

int weight_width(const ModularData& md) {
  int w = 0;
  for (const auto& f : md.factors) w += f.rank_n - 1;
  return w;
}

std::vector<std::vector<int>> unshifted_labels(const ModularData& md) {
  const int w = weight_width(md);
  std::vector<std::vector<int>> out;
  out.reserve(md.labels.size());
  for (const auto& row : md.labels) {
    std::vector<int> u = row;
    for (int i = 0; i < w; ++i) --u[i];
    out.push_back(std::move(u));
  }
  return out;
}

ordered_json modular_to_json(const ModularData& md) {
  ordered_json j;
  j["type"] = md.type;
  j["factors"] = factors_to_json(md.factors);
  j["labels"] = unshifted_labels(md);
  ordered_json srows = ordered_json::array();
  for (int a = 0; a < md.size(); ++a) {
    ordered_json row = ordered_json::array();
    for (int b = 0; b < md.size(); ++b) row.push_back(complex_to_json(md.S(a, b)));
    srows.push_back(std::move(row));
  }
  j["S"] = std::move(srows);
  ordered_json t = ordered_json::array();
  for (int a = 0; a < md.size(); ++a) t.push_back(complex_to_json(md.T[a]));
  j["T"] = std::move(t);
  j["delta"] = md.delta;
  j["c"] = md.central_charge;
  return j;
}

ModularData modular_from_json(const nlohmann::json& j) {
  require(j.is_object(), "top level must be an object");
  for (const char* key : {"type", "factors", "labels", "S", "T", "delta", "c"})
    require(j.contains(key), std::string("missing field ") + key);
  ModularData md;
  require(j["type"].is_string(), "type must be a string");
  md.type = j["type"].get<std::string>();
  require(md.type == "wzw" || md.type == "product" || md.type == "coset",
          "unknown type " + md.type);
  md.factors = factors_from_json(j["factors"]);

  int w = 0;
  for (const auto& f : md.factors) w += f.rank_n - 1;
  const int row_len = w + (md.type == "coset" ? 1 : 0);

  require(j["labels"].is_array() && !j["labels"].empty(),
          "labels must be a nonempty array");
  const int n = static_cast<int>(j["labels"].size());
  for (const auto& row : j["labels"]) {
    require(row.is_array() && static_cast<int>(row.size()) == row_len,
            "label row has wrong width");
    std::vector<int> lab;
    for (const auto& v : row) {
      require(v.is_number_integer(), "label entries must be integers");
      lab.push_back(v.get<int>());
    }
    for (int i = 0; i < w; ++i) ++lab[i];
    md.labels.push_back(std::move(lab));
  }

  require(j["S"].is_array() && static_cast<int>(j["S"].size()) == n,
          "S must have one row per label");
  md.S.resize(n, n);
  for (int a = 0; a < n; ++a) {
    const auto& row = j["S"][a];
    require(row.is_array() && static_cast<int>(row.size()) == n,
            "S row has wrong width");
    for (int b = 0; b < n; ++b) md.S(a, b) = complex_from_json(row[b]);
  }

  require(j["T"].is_array() && static_cast<int>(j["T"].size()) == n,
          "T must have one entry per label");
  md.T.resize(n);
  for (int a = 0; a < n; ++a) md.T[a] = complex_from_json(j["T"][a]);

  require(j["delta"].is_array() && static_cast<int>(j["delta"].size()) == n,
          "delta must have one entry per label");
  for (const auto& v : j["delta"]) {
    require(v.is_number(), "delta entries must be numbers");
    md.delta.push_back(v.get<double>());
  }
  require(j["c"].is_number(), "c must be a number");
  md.central_charge = j["c"].get<double>();

  // Derived views: quantum dimensions from the vacuum row, conjugation from
  // the permutation S^2.
  md.qdims.resize(n);
  for (int b = 0; b < n; ++b) {
    const cd q = md.S(0, b) / md.S(0, 0);
    require(std::abs(q.imag()) <= 1e-6, "vacuum row does not yield real "
                                        "quantum dimensions");
    md.qdims[b] = q.real();
  }
  const Eigen::MatrixXcd s2 = md.S * md.S;
  md.conj_perm.assign(n, -1);
  std::vector<bool> hit(n, false);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (std::abs(s2(a, b) - 1.0) < 1e-6) {
        require(md.conj_perm[a] < 0 && !hit[b],
                "S^2 is not a permutation matrix");
        md.conj_perm[a] = b;
        hit[b] = true;
      }
    require(md.conj_perm[a] >= 0, "S^2 is not a permutation matrix");
  }
  return md;
}

ordered_json theory_ref(const ModularData& md) {
  ordered_json j;
  j["type"] = md.type;
  j["factors"] = factors_to_json(md.factors);
  return j;
}

ModularData theory_from_ref(const nlohmann::json& j) {
  require(j.is_object() && j.contains("type") && j.contains("factors"),
          "theory reference needs type and factors");
  const std::string type = j["type"].get<std::string>();
  const auto factors = factors_from_json(j["factors"]);
  if (type == "wzw") {
    require(factors.size() == 1, "wzw reference must have a single factor");
    return wzw_theory(factors[0]);
  }
  if (type == "product") {
    std::vector<ModularData> parts;
    parts.reserve(factors.size());
    for (const auto& f : factors) parts.push_back(wzw_theory(f));
    return tensor_theory(parts);
  }
  throw schema_error("theory reference type must be wzw or product, got " +
                     type);
}

ordered_json fusion_to_json(const ModularData& md, const FusionTensor& f) {
  const auto u = unshifted_labels(md);
  ordered_json rows = ordered_json::array();
  for (int a = 0; a < f.dim; ++a)
    for (int b = 0; b < f.dim; ++b)
      for (int c = 0; c < f.dim; ++c)
        if (f(a, b, c) != 0)
          rows.push_back(ordered_json{
              {"a", u[a]}, {"b", u[b]}, {"c", u[c]}, {"n", f(a, b, c)}});
  return rows;
}

}  // namespace cmtc
