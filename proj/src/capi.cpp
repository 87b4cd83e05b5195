#include "cosetmtc.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "cosetmtc/coset.hpp"
#include "cosetmtc/invariants.hpp"
#include "cosetmtc/kw.hpp"
#include "cosetmtc/serialize.hpp"
#include "cosetmtc/wzw.hpp"

using namespace cmtc;

struct cmt_theory {
  ModularData md;
  std::optional<CosetData> coset;
};

struct cmt_branching {
  BranchingTable table;
};

namespace {

thread_local std::string g_last_error = "no error";

void set_error(const char* what) { g_last_error = what; }

// Run `f`, translating the library's exception taxonomy to status codes.
template <typename F>
cmt_status guarded(F&& f) noexcept {
  try {
    f();
    return CMT_OK;
  } catch (const schema_error& e) {
    set_error(e.what());
    return CMT_STATUS_SCHEMA;
  } catch (const out_of_scope_error& e) {
    set_error(e.what());
    return CMT_STATUS_SCOPE;
  } catch (const numeric_error& e) {
    set_error(e.what());
    return CMT_STATUS_NUMERIC;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return CMT_STATUS_INVALID;
  } catch (const std::exception& e) {
    set_error(e.what());
    return CMT_STATUS_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return CMT_STATUS_INTERNAL;
  }
}

cmt_status fail_invalid(const char* message) {
  set_error(message);
  return CMT_STATUS_INVALID;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const ordered_json& doc, char** out) {
  char* s = dup_string(doc.dump());
  if (s == nullptr) throw std::bad_alloc();
  *out = s;
}

ordered_json axioms_to_json(const AxiomReport& r, double tol,
                            double integer_tol) {
  ordered_json doc;
  doc["pass"] = r.pass(tol, integer_tol);
  doc["s_unitary"] = r.s_unitary;
  doc["s_symmetric"] = r.s_symmetric;
  doc["t_modulus"] = r.t_modulus;
  doc["tstst"] = r.tstst;
  doc["s2_conj"] = r.s2_conj;
  doc["t_conj"] = r.t_conj;
  doc["fusion_integrality"] = r.fusion_integrality;
  doc["fusion_imag"] = r.fusion_imag;
  doc["y_identity"] = r.y_identity;
  doc["qdim_min"] = r.qdim_min;
  doc["fusion_nonnegative"] = r.fusion_nonnegative;
  return doc;
}

ordered_json orientation_to_json(const ProbeOrientation& o) {
  ordered_json doc;
  doc["p"] = o.p;
  doc["tau_num"] = complex_to_json(o.tau_num);
  doc["tau_den"] = complex_to_json(o.tau_den);
  doc["tau_coset"] = complex_to_json(o.tau_coset);
  doc["ratio"] = complex_to_json(o.ratio);
  doc["c"] = o.c;
  doc["residual"] = o.residual;
  return doc;
}

// Split a comma-separated list, rejecting empty items.
std::vector<std::string> split_checks(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty())
      throw std::invalid_argument("empty entry in checks list");
    out.push_back(item);
  }
  if (out.empty()) throw std::invalid_argument("checks list is empty");
  return out;
}

}  // namespace

extern "C" {

const char* cmt_version(void) { return "0.1.0"; }

const char* cmt_last_error(void) { return g_last_error.c_str(); }

void cmt_string_free(char* s) { std::free(s); }

cmt_status cmt_wzw_new(int n, int level, cmt_theory** out) {
  if (out == nullptr) return fail_invalid("out pointer is null");
  return guarded([&] {
    auto t = std::make_unique<cmt_theory>();
    t->md = wzw_theory(AlgebraSpec{n, level});
    *out = t.release();
  });
}

cmt_status cmt_coset_new(int n, int m1, int m2, cmt_theory** out) {
  if (out == nullptr) return fail_invalid("out pointer is null");
  return guarded([&] {
    auto t = std::make_unique<cmt_theory>();
    t->coset = build_coset(CosetSpec{n, m1, m2});
    t->md = t->coset->md;
    *out = t.release();
  });
}

void cmt_theory_free(cmt_theory* t) { delete t; }

cmt_status cmt_theory_json(const cmt_theory* t, char** out) {
  if (t == nullptr || out == nullptr)
    return fail_invalid("null theory or out pointer");
  return guarded([&] { emit(modular_to_json(t->md), out); });
}

cmt_status cmt_theory_fusion_json(const cmt_theory* t, char** out) {
  if (t == nullptr || out == nullptr)
    return fail_invalid("null theory or out pointer");
  return guarded([&] {
    const FusionTensor f = verlinde_fusion(t->md);
    emit(fusion_to_json(t->md, f), out);
  });
}

cmt_status cmt_theory_verify_json(const cmt_theory* t, double tol,
                                  double integer_tol, int* pass, char** out) {
  if (t == nullptr || pass == nullptr || out == nullptr)
    return fail_invalid("null theory, pass, or out pointer");
  if (tol <= 0 || integer_tol < tol)
    return fail_invalid("tolerances must satisfy 0 < tol <= integer_tol");
  return guarded([&] {
    if (t->coset.has_value()) {
      const CosetVerifyReport r = coset_verify(*t->coset, integer_tol);
      ordered_json doc;
      doc["pass"] = r.pass(tol, integer_tol);
      doc["axioms"] = axioms_to_json(r.axioms, tol, integer_tol);
      doc["y_condition"] = r.y_condition;
      doc["orbit_aggregate_dev"] = r.orbit_aggregate_dev;
      doc["fixed_formula_dev"] = r.fixed_formula_dev;
      doc["fixed_self_conjugate"] = r.fixed_self_conjugate;
      *pass = doc["pass"].get<bool>() ? 1 : 0;
      emit(doc, out);
    } else {
      const AxiomReport r = verify_modular_axioms(t->md, integer_tol);
      const ordered_json doc = axioms_to_json(r, tol, integer_tol);
      *pass = doc["pass"].get<bool>() ? 1 : 0;
      emit(doc, out);
    }
  });
}

cmt_status cmt_coset_sectors_json(const cmt_theory* t, char** out) {
  if (t == nullptr || out == nullptr)
    return fail_invalid("null theory or out pointer");
  if (!t->coset.has_value())
    return fail_invalid("sector table requires a coset theory");
  return guarded([&] {
    const CosetData& d = *t->coset;
    const auto l1 = unshifted_labels(d.part1);
    const auto l2 = unshifted_labels(d.part2);
    const auto ld = unshifted_labels(d.denom);
    ordered_json rows = ordered_json::array();
    for (const auto& s : d.sectors) {
      const Orbit& orbit = d.orbits[s.orbit];
      int i1 = 0, i2 = 0, al = 0;
      d.decode(orbit.members[0], i1, i2, al);
      ordered_json row;
      row["orbit"] = ordered_json::array({l1[i1], l2[i2], ld[al]});
      row["period"] = orbit.period;
      row["mult"] = orbit.mult;
      row["res_index"] = s.res_index + 1;
      row["qdim"] = s.qdim;
      row["delta"] = s.delta;
      row["univalence"] = complex_to_json(s.univalence);
      rows.push_back(std::move(row));
    }
    emit(rows, out);
  });
}

cmt_status cmt_coset_sigma_json(const cmt_theory* t, double tol, int* pass,
                                char** out) {
  if (t == nullptr || pass == nullptr || out == nullptr)
    return fail_invalid("null theory, pass, or out pointer");
  if (tol <= 0) return fail_invalid("tolerance must be positive");
  if (!t->coset.has_value())
    return fail_invalid("gauss-sum report requires a coset theory");
  return guarded([&] {
    const SigmaTildeReport r = sigma_tilde_check(*t->coset);
    ordered_json doc;
    doc["pass"] = r.pass(tol);
    doc["direct"] = complex_to_json(r.direct);
    doc["closed"] = complex_to_json(r.closed);
    doc["closed_dev"] = r.closed_dev;
    doc["norm_dev"] = r.norm_dev;
    doc["w1_abs"] = r.w1_abs;
    doc["sector_vs_w0"] = r.sector_vs_w0;
    *pass = r.pass(tol) ? 1 : 0;
    emit(doc, out);
  });
}

cmt_status cmt_branching_diagonal(int n, int m1, int m2, cmt_branching** out) {
  if (out == nullptr) return fail_invalid("out pointer is null");
  return guarded([&] {
    auto b = std::make_unique<cmt_branching>();
    b->table = diagonal_branching(CosetSpec{n, m1, m2});
    *out = b.release();
  });
}

cmt_status cmt_branching_load(const char* path, cmt_branching** out) {
  if (path == nullptr || out == nullptr)
    return fail_invalid("null path or out pointer");
  return guarded([&] {
    auto b = std::make_unique<cmt_branching>();
    b->table = load_branching_table(path);
    *out = b.release();
  });
}

void cmt_branching_free(cmt_branching* b) { delete b; }

cmt_status cmt_branching_json(const cmt_branching* b, char** out) {
  if (b == nullptr || out == nullptr)
    return fail_invalid("null branching or out pointer");
  return guarded([&] { emit(branching_to_json(b->table), out); });
}

cmt_status cmt_kw_checks_json(const cmt_branching* b, const char* checks,
                              double tol, int* pass, char** out) {
  if (b == nullptr || checks == nullptr || pass == nullptr || out == nullptr)
    return fail_invalid("null branching, checks, pass, or out pointer");
  if (tol <= 0) return fail_invalid("tolerance must be positive");
  return guarded([&] {
    const BranchingTable& t = b->table;
    const auto ni = unshifted_labels(t.num);
    const auto di = unshifted_labels(t.den);
    ordered_json doc;
    bool all = true;
    for (const std::string& name : split_checks(checks)) {
      if (name == "kwc") {
        const KwcReport r = check_kwc(t, tol);
        ordered_json sec;
        sec["pass"] = r.pass;
        sec["min_b"] = r.min_b;
        sec["b_values"] = ordered_json::array();
        for (const auto& [pair, value] : r.b_values)
          sec["b_values"].push_back(
              ordered_json::array({ni[pair.first], di[pair.second], value}));
        sec["failures"] = ordered_json::array();
        for (const auto& [i, al] : r.failures)
          sec["failures"].push_back(ordered_json::array({ni[i], di[al]}));
        all = all && r.pass;
        doc["kwc"] = std::move(sec);
      } else if (name == "kwh") {
        const KwhReport r = check_kwh(t, tol);
        ordered_json sec;
        sec["pass"] = r.pass;
        sec["violations"] = ordered_json::array();
        for (const auto& v : r.violations) {
          ordered_json row;
          row["i"] = ni[v.i];
          row["alpha"] = di[v.alpha];
          row["j"] = ni[v.j];
          row["beta"] = di[v.beta];
          row["product"] = v.product;
          sec["violations"].push_back(std::move(row));
        }
        all = all && r.pass;
        doc["kwh"] = std::move(sec);
      } else if (name == "cond2") {
        const Condition2Report r = check_condition2(t);
        ordered_json sec;
        sec["pass"] = r.pass;
        sec["witnesses"] = ordered_json::array();
        for (const auto& [j, be] : r.witnesses)
          sec["witnesses"].push_back(ordered_json::array({ni[j], di[be]}));
        all = all && r.pass;
        doc["cond2"] = std::move(sec);
      } else if (name == "prop32") {
        const Prop32Report r = prop32_check(t, tol);
        ordered_json sec;
        sec["pass"] = r.pass;
        sec["qualifying"] = r.qualifying;
        sec["max_dev"] = r.max_dev;
        all = all && r.pass;
        doc["prop32"] = std::move(sec);
      } else {
        throw std::invalid_argument("unknown check: " + name);
      }
    }
    ordered_json full;
    full["pass"] = all;
    for (auto& [key, value] : doc.items()) full[key] = std::move(value);
    *pass = all ? 1 : 0;
    emit(full, out);
  });
}

cmt_status cmt_lens_json(const cmt_theory* t, int p, double tol, char** out) {
  if (t == nullptr || out == nullptr)
    return fail_invalid("null theory or out pointer");
  if (tol <= 0) return fail_invalid("tolerance must be positive");
  return guarded([&] {
    const cd value = lens_invariant(t->md, p, tol);
    ordered_json doc;
    doc["p"] = p;
    doc["value"] = complex_to_json(value);
    emit(doc, out);
  });
}

cmt_status cmt_probe_json(const cmt_theory* t, int p, double tol, char** out) {
  if (t == nullptr || out == nullptr)
    return fail_invalid("null theory or out pointer");
  if (tol <= 0) return fail_invalid("tolerance must be positive");
  if (!t->coset.has_value())
    return fail_invalid("factorization probe requires a coset theory");
  return guarded([&] {
    const LensProbe probe = factorization_probe(*t->coset, p, tol);
    ordered_json doc;
    doc["n"] = probe.rank_n;
    doc["p"] = p;
    doc["forward"] = orientation_to_json(probe.forward);
    doc["reverse"] = orientation_to_json(probe.reverse);
    emit(doc, out);
  });
}

}  // extern "C"
