// Command-line front end.  Links the C surface of the shared library only;
// all number crunching happens behind cosetmtc.h.
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cosetmtc.h"

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Config {
  double tol = 1e-9;
  double integer_tol = 1e-6;
  std::string format = "json";
  std::string cache_dir;
};

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { cmt_string_free(p); }
};

struct Theory {
  cmt_theory* h = nullptr;
  ~Theory() { cmt_theory_free(h); }
};

struct Branching {
  cmt_branching* h = nullptr;
  ~Branching() { cmt_branching_free(h); }
};

// Exit contract: 0 pass, 1 check/numeric failure, 2 usage or schema error,
// 3 out-of-scope request.
int exit_for(cmt_status st) {
  switch (st) {
    case CMT_OK:
      return 0;
    case CMT_STATUS_INVALID:
    case CMT_STATUS_SCHEMA:
      return 2;
    case CMT_STATUS_SCOPE:
      return 3;
    default:
      return 1;
  }
}

int report_error(cmt_status st) {
  std::cerr << "error: " << cmt_last_error() << '\n';
  return exit_for(st);
}

// ---------------------------------------------------------------------------
// Emission formatting
// ---------------------------------------------------------------------------

// Keys whose [re, im] values are complex numbers rather than label lists.
bool complex_key(const std::string& k) {
  static const std::set<std::string> keys = {
      "univalence", "value", "tau_num", "tau_den",
      "tau_coset",  "ratio", "direct",  "closed"};
  return keys.count(k) > 0;
}

std::string scalar_cell(const ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string joined_cell(const ordered_json& arr) {
  std::string s;
  for (const auto& e : arr) {
    if (!s.empty()) s += ' ';
    s += scalar_cell(e);
  }
  return s;
}

void flatten_cells(const ordered_json& v, std::vector<std::string>& cells) {
  if (v.is_array())
    for (const auto& e : v) flatten_cells(e, cells);
  else
    cells.push_back(scalar_cell(v));
}

void print_row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i)
    std::cout << (i ? "," : "") << cells[i];
  std::cout << '\n';
}

// Table cells for one object row: complex values split into _re/_im columns,
// lists of label lists into one column per list, label lists space-joined.
void object_row_cells(const ordered_json& row, bool header,
                      std::vector<std::string>& cells) {
  for (const auto& [k, v] : row.items()) {
    if (v.is_array() && complex_key(k)) {
      if (header) {
        cells.push_back(k + "_re");
        cells.push_back(k + "_im");
      } else {
        cells.push_back(scalar_cell(v[0]));
        cells.push_back(scalar_cell(v[1]));
      }
    } else if (v.is_array() && !v.empty() && v[0].is_array()) {
      for (size_t i = 0; i < v.size(); ++i)
        cells.push_back(header ? k + "_" + std::to_string(i + 1)
                               : joined_cell(v[i]));
    } else if (v.is_array()) {
      cells.push_back(header ? k : joined_cell(v));
    } else {
      cells.push_back(header ? k : scalar_cell(v));
    }
  }
}

void csv_object_table(const ordered_json& rows) {
  std::vector<std::string> cells;
  object_row_cells(rows[0], /*header=*/true, cells);
  print_row(cells);
  for (const auto& row : rows) {
    cells.clear();
    object_row_cells(row, /*header=*/false, cells);
    print_row(cells);
  }
}

// key,value rows with dotted paths; arrays of objects recurse per element.
void csv_report(const ordered_json& obj, const std::string& prefix) {
  for (const auto& [k, v] : obj.items()) {
    const std::string path = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      csv_report(v, path);
    } else if (v.is_array() && complex_key(k)) {
      print_row({path, scalar_cell(v[0]), scalar_cell(v[1])});
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      for (size_t i = 0; i < v.size(); ++i)
        csv_report(v[i], path + "." + std::to_string(i));
    } else if (v.is_array() && !v.empty() && v[0].is_array()) {
      for (size_t i = 0; i < v.size(); ++i) {
        std::vector<std::string> cells = {path + "." + std::to_string(i)};
        for (const auto& part : v[i])
          cells.push_back(part.is_array() ? joined_cell(part)
                                          : scalar_cell(part));
        print_row(cells);
      }
    } else if (v.is_array()) {
      print_row({path, joined_cell(v)});
    } else {
      print_row({path, scalar_cell(v)});
    }
  }
}

void print_csv(const ordered_json& doc) {
  if (doc.is_array()) {
    if (doc.empty()) return;
    if (doc[0].is_object()) {
      csv_object_table(doc);
      return;
    }
    for (const auto& row : doc) {
      std::vector<std::string> cells;
      flatten_cells(row, cells);
      print_row(cells);
    }
    return;
  }
  csv_report(doc, "");
}

// Pretty output rounds to 6 significant digits; for human reading only.
std::string fmt6(const ordered_json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>() + 0.0);
    return buf;
  }
  return scalar_cell(v);
}

std::string pretty_complex(const ordered_json& pair) {
  const double re = pair[0].get<double>();
  const double im = pair[1].get<double>();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re + 0.0, im + 0.0);
  return buf;
}

bool is_complex_pair(const ordered_json& v) {
  return v.is_array() && v.size() == 2 && v[0].is_number() &&
         v[1].is_number() && (v[0].is_number_float() || v[1].is_number_float());
}

std::string pretty_cell(const ordered_json& v, const std::string& key) {
  if (v.is_array() && (complex_key(key) || is_complex_pair(v)))
    return pretty_complex(v);
  if (v.is_array() && !v.empty() && v[0].is_array()) {
    std::string s;
    for (const auto& part : v) {
      if (!s.empty()) s += " | ";
      s += joined_cell(part);
    }
    return s;
  }
  if (v.is_array()) return joined_cell(v);
  return fmt6(v);
}

void print_aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) std::cout << "  ";
      std::cout << row[i]
                << std::string(i + 1 < row.size() ? width[i] - row[i].size()
                                                  : 0,
                               ' ');
    }
    std::cout << '\n';
  }
}

void pretty_report(const ordered_json& obj, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [k, v] : obj.items()) {
    if (v.is_object()) {
      std::cout << pad << k << ":\n";
      pretty_report(v, indent + 2);
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      for (size_t i = 0; i < v.size(); ++i) {
        std::cout << pad << k << "[" << i << "]:\n";
        pretty_report(v[i], indent + 2);
      }
    } else if (v.is_array() && !v.empty() && v[0].is_array() &&
               !complex_key(k)) {
      for (size_t i = 0; i < v.size(); ++i) {
        std::vector<std::string> cells;
        for (const auto& part : v[i])
          cells.push_back(part.is_array() ? joined_cell(part) : fmt6(part));
        std::cout << pad << k << "[" << i << "]: ";
        for (size_t j = 0; j < cells.size(); ++j)
          std::cout << (j ? "  " : "") << cells[j];
        std::cout << '\n';
      }
    } else {
      std::cout << pad << k << ": " << pretty_cell(v, k) << '\n';
    }
  }
}

void print_pretty(const ordered_json& doc) {
  if (doc.is_array()) {
    if (doc.empty()) return;
    std::vector<std::vector<std::string>> rows;
    if (doc[0].is_object()) {
      std::vector<std::string> header;
      object_row_cells(doc[0], /*header=*/true, header);
      rows.push_back(header);
      for (const auto& row : doc) {
        std::vector<std::string> cells;
        for (const auto& [k, v] : row.items()) {
          if (v.is_array() && complex_key(k)) {
            cells.push_back(fmt6(v[0]));
            cells.push_back(fmt6(v[1]));
          } else if (v.is_array() && !v.empty() && v[0].is_array()) {
            for (const auto& part : v) cells.push_back(joined_cell(part));
          } else if (v.is_array()) {
            cells.push_back(joined_cell(v));
          } else {
            cells.push_back(fmt6(v));
          }
        }
        rows.push_back(cells);
      }
    } else {
      for (const auto& row : doc) {
        std::vector<std::string> cells;
        if (row.is_array() && is_complex_pair(row)) {
          cells.push_back(pretty_complex(row));
        } else if (row.is_array()) {
          for (const auto& e : row)
            cells.push_back(is_complex_pair(e) ? pretty_complex(e) : fmt6(e));
        } else {
          cells.push_back(fmt6(row));
        }
        rows.push_back(cells);
      }
    }
    print_aligned(rows);
    return;
  }
  pretty_report(doc, 0);
}

void print_doc(const ordered_json& doc, const Config& cfg) {
  if (cfg.format == "json")
    std::cout << doc.dump() << '\n';
  else if (cfg.format == "csv")
    print_csv(doc);
  else
    print_pretty(doc);
}

// ---------------------------------------------------------------------------
// Modular-data cache
// ---------------------------------------------------------------------------

std::string version_tag() {
  std::string v = cmt_version();
  for (auto& ch : v)
    if (ch == '.') ch = '_';
  return v;
}

fs::path cache_path(const Config& cfg, const std::string& key) {
  return fs::path(cfg.cache_dir) / (key + "-v" + version_tag() + ".json");
}

std::optional<ordered_json> read_cache(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;  // plain miss
  std::ostringstream buf;
  buf << in.rdbuf();
  auto doc = ordered_json::parse(buf.str(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("S") ||
      !doc.contains("T")) {
    std::cerr << "warning: corrupt cache entry, recomputing: " << p.string()
              << '\n';
    return std::nullopt;
  }
  return doc;
}

void write_cache(const fs::path& p, const std::string& bytes) {
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  fs::path tmp = p;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "warning: cache write failed: " << tmp.string() << '\n';
      return;
    }
    out << bytes;
  }
  fs::rename(tmp, p, ec);
  if (ec) {
    std::cerr << "warning: cache write failed: " << p.string() << '\n';
    fs::remove(tmp, ec);
  }
}

// Modular data of a theory, through the cache when one is configured.
// Returns 0 and fills `out`, or a nonzero exit code after reporting.
int modular_doc(const Config& cfg, const std::string& key, bool coset, int n,
                int a, int b, ordered_json& out) {
  const bool caching = !cfg.cache_dir.empty();
  fs::path p;
  if (caching) {
    p = cache_path(cfg, key);
    if (auto doc = read_cache(p)) {
      out = std::move(*doc);
      return 0;
    }
  }
  Theory t;
  cmt_status st = coset ? cmt_coset_new(n, a, b, &t.h) : cmt_wzw_new(n, a, &t.h);
  if (st != CMT_OK) return report_error(st);
  OwnedString s;
  st = cmt_theory_json(t.h, &s.p);
  if (st != CMT_OK) return report_error(st);
  const std::string bytes(s.p);
  if (caching) write_cache(p, bytes);
  out = ordered_json::parse(bytes);
  return 0;
}

// ---------------------------------------------------------------------------
// Subcommand handlers
// ---------------------------------------------------------------------------

int emit_verify(const Config& cfg, cmt_theory* h) {
  int pass = 0;
  OwnedString s;
  const cmt_status st =
      cmt_theory_verify_json(h, cfg.tol, cfg.integer_tol, &pass, &s.p);
  if (st != CMT_OK) return report_error(st);
  print_doc(ordered_json::parse(s.p), cfg);
  return pass ? 0 : 1;
}

int emit_fusion(const Config& cfg, cmt_theory* h) {
  OwnedString s;
  const cmt_status st = cmt_theory_fusion_json(h, &s.p);
  if (st != CMT_OK) return report_error(st);
  print_doc(ordered_json::parse(s.p), cfg);
  return 0;
}

int run_wzw(const Config& cfg, int n, int k, const std::string& emit) {
  if (emit == "s" || emit == "t" || emit == "delta") {
    ordered_json doc;
    const std::string key =
        "wzw-n" + std::to_string(n) + "-k" + std::to_string(k);
    if (const int rc = modular_doc(cfg, key, false, n, k, 0, doc)) return rc;
    print_doc(doc[emit == "s" ? "S" : emit == "t" ? "T" : "delta"], cfg);
    return 0;
  }
  Theory t;
  if (const cmt_status st = cmt_wzw_new(n, k, &t.h); st != CMT_OK)
    return report_error(st);
  if (emit == "fusion") return emit_fusion(cfg, t.h);
  return emit_verify(cfg, t.h);
}

int run_coset(const Config& cfg, int n, int m1, int m2,
              const std::string& emit) {
  if (emit == "s" || emit == "t") {
    ordered_json doc;
    const std::string key = "coset-n" + std::to_string(n) + "-m" +
                            std::to_string(m1) + "-" + std::to_string(m2);
    if (const int rc = modular_doc(cfg, key, true, n, m1, m2, doc)) return rc;
    print_doc(doc[emit == "s" ? "S" : "T"], cfg);
    return 0;
  }
  Theory t;
  if (const cmt_status st = cmt_coset_new(n, m1, m2, &t.h); st != CMT_OK)
    return report_error(st);
  if (emit == "sectors") {
    OwnedString s;
    if (const cmt_status st = cmt_coset_sectors_json(t.h, &s.p); st != CMT_OK)
      return report_error(st);
    print_doc(ordered_json::parse(s.p), cfg);
    return 0;
  }
  if (emit == "sigma-tilde") {
    int pass = 0;
    OwnedString s;
    const cmt_status st = cmt_coset_sigma_json(t.h, cfg.tol, &pass, &s.p);
    if (st != CMT_OK) return report_error(st);
    print_doc(ordered_json::parse(s.p), cfg);
    return pass ? 0 : 1;
  }
  if (emit == "fusion") return emit_fusion(cfg, t.h);
  return emit_verify(cfg, t.h);
}

int run_kw(const Config& cfg, const std::vector<int>& diagonal,
           const std::string& branching, const std::string& checks) {
  Branching b;
  const cmt_status build =
      branching.empty()
          ? cmt_branching_diagonal(diagonal[0], diagonal[1], diagonal[2], &b.h)
          : cmt_branching_load(branching.c_str(), &b.h);
  if (build != CMT_OK) return report_error(build);
  int pass = 0;
  OwnedString s;
  const cmt_status st =
      cmt_kw_checks_json(b.h, checks.c_str(), cfg.tol, &pass, &s.p);
  if (st != CMT_OK) return report_error(st);
  print_doc(ordered_json::parse(s.p), cfg);
  return pass ? 0 : 1;
}

int run_invariant(const Config& cfg, const std::vector<int>& wzw,
                  const std::vector<int>& coset, int p, bool probe) {
  Theory t;
  const cmt_status build =
      wzw.empty() ? cmt_coset_new(coset[0], coset[1], coset[2], &t.h)
                  : cmt_wzw_new(wzw[0], wzw[1], &t.h);
  if (build != CMT_OK) return report_error(build);
  OwnedString s;
  const cmt_status st = probe ? cmt_probe_json(t.h, p, cfg.tol, &s.p)
                              : cmt_lens_json(t.h, p, cfg.tol, &s.p);
  if (st != CMT_OK) return report_error(st);
  print_doc(ordered_json::parse(s.p), cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  if (const char* env = std::getenv("COSET_CACHE_DIR")) cfg.cache_dir = env;

  CLI::App app{
      "Modular data of su(n) WZW models and diagonal cosets: spectra, "
      "gauss-sum checks, and surgery invariants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cmt_version());
  app.add_option("--tolerance", cfg.tol, "structural tolerance");
  app.add_option("--integer-tolerance", cfg.integer_tol,
                 "integrality tolerance");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "pretty-table"}));
  app.add_option("--cache-dir", cfg.cache_dir,
                 "modular-data cache directory (default: $COSET_CACHE_DIR)");

  int wn = 0, wk = 0;
  std::string wzw_emit;
  auto* wzw = app.add_subcommand("wzw", "su(n) level-k modular data");
  wzw->fallthrough();
  wzw->add_option("N", wn, "rank n of su(n)")->required();
  wzw->add_option("K", wk, "level")->required();
  wzw->add_option("--emit", wzw_emit, "object to emit")
      ->required()
      ->check(CLI::IsMember({"s", "t", "fusion", "delta", "verify"}));

  int cn = 0, cm1 = 0, cm2 = 0;
  std::string coset_emit;
  auto* coset = app.add_subcommand(
      "coset", "diagonal coset su(n)_m1 x su(n)_m2 / su(n)_{m1+m2}");
  coset->fallthrough();
  coset->add_option("N", cn, "rank n of su(n)")->required();
  coset->add_option("M1", cm1, "first level")->required();
  coset->add_option("M2", cm2, "second level")->required();
  coset->add_option("--emit", coset_emit, "object to emit")
      ->required()
      ->check(CLI::IsMember(
          {"sectors", "s", "t", "fusion", "verify", "sigma-tilde"}));

  std::vector<int> kw_diag;
  std::string kw_file;
  std::string kw_checks = "kwc,kwh,cond2,prop32";
  auto* kw = app.add_subcommand("kw", "branching-coefficient checks");
  kw->fallthrough();
  auto* diag_opt =
      kw->add_option("--diagonal", kw_diag, "diagonal coset N M1 M2")
          ->expected(3);
  auto* file_opt =
      kw->add_option("--branching", kw_file, "branching-table JSON file");
  diag_opt->excludes(file_opt);
  file_opt->excludes(diag_opt);
  kw->add_option("--checks", kw_checks,
                 "comma-separated subset of kwc,kwh,cond2,prop32");

  std::vector<int> inv_wzw, inv_coset;
  int inv_p = 0;
  bool inv_probe = false;
  auto* inv = app.add_subcommand("invariant", "lens-space surgery invariants");
  inv->fallthrough();
  auto* iw = inv->add_option("--wzw", inv_wzw, "theory N K")->expected(2);
  auto* ic = inv->add_option("--coset", inv_coset, "theory N M1 M2")->expected(3);
  iw->excludes(ic);
  ic->excludes(iw);
  inv->add_option("--p", inv_p, "surgery parameter")->required();
  inv->add_flag("--probe", inv_probe,
                "emit numerator, denominator, and coset values with the "
                "factorization ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cfg.tol <= 0 || cfg.integer_tol < cfg.tol) {
    std::cerr << "error: tolerances must satisfy 0 < tolerance <= "
                 "integer-tolerance\n";
    return 2;
  }

  if (app.got_subcommand(wzw)) return run_wzw(cfg, wn, wk, wzw_emit);
  if (app.got_subcommand(coset)) return run_coset(cfg, cn, cm1, cm2, coset_emit);
  if (app.got_subcommand(kw)) {
    if (kw_diag.empty() && kw_file.empty()) {
      std::cerr << "error: kw requires --diagonal or --branching\n";
      return 2;
    }
    return run_kw(cfg, kw_diag, kw_file, kw_checks);
  }
  if (app.got_subcommand(inv)) {
    if (inv_wzw.empty() && inv_coset.empty()) {
      std::cerr << "error: invariant requires --wzw or --coset\n";
      return 2;
    }
    return run_invariant(cfg, inv_wzw, inv_coset, inv_p, inv_probe);
  }
  return 2;  // require_subcommand(1) makes this unreachable
}
