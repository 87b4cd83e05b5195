#include "cosetmtc/kw.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <sstream>

#include "cosetmtc/weights.hpp"

namespace cmtc {

namespace {

// Enforce the structural invariants shared by both construction paths.
void validate_table(const BranchingTable& t) {
  if (t.exp.empty()) throw schema_error("branching table: exp set is empty");
  for (const auto& [pair, mult] : t.vacuum_mult) {
    if (mult <= 0)
      throw schema_error("branching table: nonpositive vacuum multiplicity");
    if (!std::binary_search(t.exp.begin(), t.exp.end(), pair))
      throw schema_error(
          "branching table: positive-multiplicity pair missing from exp");
  }
  const auto vac = t.vacuum_mult.find({0, 0});
  if (vac == t.vacuum_mult.end() || vac->second < 1)
    throw schema_error(
        "branching table: vacuum pair must have multiplicity at least 1");
}

}  // namespace

bool BranchingTable::in_exp(int i, int alpha) const {
  return std::binary_search(exp.begin(), exp.end(), std::make_pair(i, alpha));
}

BranchingTable diagonal_branching(const CosetSpec& spec) {
  if (spec.rank_n < 2)
    throw std::invalid_argument("coset rank must be at least 2");
  if (spec.m1 < 0 || spec.m2 < 0)
    throw std::invalid_argument("coset levels must be nonnegative");

  BranchingTable t;
  const ModularData part1 = wzw_theory(spec.num1());
  const ModularData part2 = wzw_theory(spec.num2());
  t.num = tensor_theory({part1, part2});
  t.den = wzw_theory(spec.den());

  const int n1 = part1.size();
  const int n2 = part2.size();
  const int nd = t.den.size();
  const int N = spec.rank_n;

  std::vector<int> c1(n1), c2(n2), cd_(nd);
  for (int a = 0; a < n1; ++a) c1[a] = color(part1.labels[a], N);
  for (int a = 0; a < n2; ++a) c2[a] = color(part2.labels[a], N);
  for (int a = 0; a < nd; ++a) cd_[a] = color(t.den.labels[a], N);

  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int al = 0; al < nd; ++al)
        if ((c1[i1] + c2[i2] - cd_[al]) % N == 0)
          t.exp.emplace_back(i1 * n2 + i2, al);
  std::sort(t.exp.begin(), t.exp.end());

  // Vacuum multiplicity 1 on each distinct member of the simultaneous
  // rotation orbit of the vacuum pair.
  const std::vector<int> s1 = rotation_permutation(part1);
  const std::vector<int> s2 = rotation_permutation(part2);
  const std::vector<int> sd = rotation_permutation(t.den);
  int j1 = 0, j2 = 0, be = 0;
  for (int s = 0; s < N; ++s) {
    t.vacuum_mult[{j1 * n2 + j2, be}] = 1;
    j1 = s1[j1];
    j2 = s2[j2];
    be = sd[be];
  }

  validate_table(t);
  return t;
}

namespace {

// Parse one unshifted label row against a theory's label->index map.
int label_index(const nlohmann::json& j,
                const std::map<std::vector<int>, int>& index,
                const char* side) {
  if (!j.is_array())
    throw schema_error(std::string("branching table: ") + side +
                       " label is not an array");
  std::vector<int> lab;
  for (const auto& e : j) {
    if (!e.is_number_integer())
      throw schema_error(std::string("branching table: ") + side +
                         " label entry is not an integer");
    lab.push_back(e.get<int>());
  }
  const auto it = index.find(lab);
  if (it == index.end())
    throw schema_error(std::string("branching table: unknown ") + side +
                       " label");
  return it->second;
}

std::map<std::vector<int>, int> label_map(const ModularData& md) {
  std::map<std::vector<int>, int> index;
  const auto rows = unshifted_labels(md);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) index[rows[i]] = i;
  return index;
}

}  // namespace

BranchingTable branching_from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw schema_error("branching table: document is not an object");
  for (const char* key : {"numerator", "denominator", "exp", "vacuum_mult"})
    if (!doc.contains(key))
      throw schema_error(std::string("branching table: missing key '") + key +
                         "'");

  BranchingTable t;
  t.num = theory_from_ref(doc["numerator"]);
  t.den = theory_from_ref(doc["denominator"]);
  const auto num_index = label_map(t.num);
  const auto den_index = label_map(t.den);

  if (!doc["exp"].is_array())
    throw schema_error("branching table: exp is not an array");
  for (const auto& row : doc["exp"]) {
    if (!row.is_array() || row.size() != 2)
      throw schema_error("branching table: exp row is not a label pair");
    const int i = label_index(row[0], num_index, "numerator");
    const int al = label_index(row[1], den_index, "denominator");
    t.exp.emplace_back(i, al);
  }
  std::sort(t.exp.begin(), t.exp.end());
  if (std::adjacent_find(t.exp.begin(), t.exp.end()) != t.exp.end())
    throw schema_error("branching table: duplicate exp pair");

  if (!doc["vacuum_mult"].is_array())
    throw schema_error("branching table: vacuum_mult is not an array");
  for (const auto& row : doc["vacuum_mult"]) {
    if (!row.is_array() || row.size() != 3)
      throw schema_error(
          "branching table: vacuum_mult row is not [label, label, mult]");
    const int j = label_index(row[0], num_index, "numerator");
    const int be = label_index(row[1], den_index, "denominator");
    if (!row[2].is_number_integer() || row[2].get<int>() <= 0)
      throw schema_error(
          "branching table: multiplicity must be a positive integer");
    if (!t.vacuum_mult.emplace(std::make_pair(j, be), row[2].get<int>())
             .second)
      throw schema_error("branching table: duplicate vacuum_mult pair");
  }

  validate_table(t);
  return t;
}

ordered_json branching_to_json(const BranchingTable& t) {
  ordered_json doc;
  doc["numerator"] = theory_ref(t.num);
  doc["denominator"] = theory_ref(t.den);
  const auto num_rows = unshifted_labels(t.num);
  const auto den_rows = unshifted_labels(t.den);
  doc["exp"] = ordered_json::array();
  for (const auto& [i, al] : t.exp)
    doc["exp"].push_back(ordered_json::array({num_rows[i], den_rows[al]}));
  doc["vacuum_mult"] = ordered_json::array();
  for (const auto& [pair, mult] : t.vacuum_mult)
    doc["vacuum_mult"].push_back(ordered_json::array(
        {num_rows[pair.first], den_rows[pair.second], mult}));
  return doc;
}

BranchingTable load_branching_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open branching file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw schema_error(std::string("branching file is not valid json: ") +
                       e.what());
  }
  return branching_from_json(doc);
}

double b_value(const BranchingTable& t, int i, int alpha) {
  cd sum = 0;
  for (const auto& [pair, mult] : t.vacuum_mult)
    sum += t.num.S(i, pair.first) *
           std::conj(t.den.S(alpha, pair.second)) *
           static_cast<double>(mult);
  if (std::abs(sum.imag()) > kStructuralTol)
    throw numeric_error("b-value has a nonreal part; branching data is "
                        "inconsistent with the S matrices");
  return sum.real();
}

KwcReport check_kwc(const BranchingTable& t, double tol) {
  KwcReport r;
  r.min_b = std::numeric_limits<double>::infinity();
  for (const auto& pair : t.exp) {
    const double b = b_value(t, pair.first, pair.second);
    r.b_values.emplace_back(pair, b);
    r.min_b = std::min(r.min_b, b);
    if (b <= tol) r.failures.push_back(pair);
  }
  r.pass = r.failures.empty();
  return r;
}

KwhReport check_kwh(const BranchingTable& t, double tol) {
  KwhReport r;
  for (const auto& [i, alpha] : t.exp) {
    for (const auto& [pair, mult] : t.vacuum_mult) {
      (void)mult;  // positivity already validated
      const cd p =
          t.num.S(i, pair.first) * std::conj(t.den.S(alpha, pair.second));
      if (p.real() < -tol || std::abs(p.imag()) > tol)
        r.violations.push_back({i, alpha, pair.first, pair.second, p.real()});
    }
  }
  r.pass = r.violations.empty();
  return r;
}

Condition2Report check_condition2(const BranchingTable& t) {
  Condition2Report r;
  for (const auto& [pair, mult] : t.vacuum_mult) {
    (void)mult;
    if (pair.first == 0 && pair.second != 0) r.witnesses.push_back(pair);
  }
  r.pass = r.witnesses.empty();
  return r;
}

Prop32Report prop32_check(const BranchingTable& t, double tol) {
  Prop32Report r;
  const double b11 = b_value(t, 0, 0);
  if (b11 <= tol)
    throw numeric_error("vacuum b-value is not positive");
  const cd s11 = t.num.S(0, 0);
  for (int i = 0; i < t.num.size(); ++i) {
    const double bi = b_value(t, i, 0);
    if (bi <= tol) continue;
    ++r.qualifying;
    const cd ratio = t.num.S(i, 0) / s11;
    if (std::abs(ratio.imag()) > tol)
      throw numeric_error("vacuum-column S ratio is not real");
    r.max_dev = std::max(r.max_dev, std::abs(bi / b11 - ratio.real()));
  }
  r.pass = r.max_dev <= tol;
  return r;
}

}  // namespace cmtc
