// End-to-end tests of the command-line binary: spawns the real executable
// and checks emissions, exit codes, and cache behavior.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

const std::string kCli = COSETMTC_CLI_PATH;
const std::string kDataDir = COSETMTC_DATA_DIR;
const std::string kTmp =
    "/tmp/cosetmtc_cli_test_" + std::to_string(::getpid());

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Run the CLI with `args` (shell-syntax string), capturing exit code and
// both streams.  `env_prefix` may carry VAR=value assignments.
RunResult run(const std::string& args, const std::string& env_prefix = "") {
  fs::create_directories(kTmp);
  const std::string out_path = kTmp + "/out.txt";
  const std::string err_path = kTmp + "/err.txt";
  const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + "\"" +
                          kCli + "\" " + args + " > " + out_path + " 2> " +
                          err_path;
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

nlohmann::json parse(const std::string& text) {
  return nlohmann::json::parse(text);
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("wzw s emission is the expected 2x2 complex matrix") {
  const auto r = run("wzw 2 1 --emit s");
  REQUIRE(r.code == 0);
  const auto s = parse(r.out);
  REQUIRE(s.size() == 2);
  REQUIRE(s[0].size() == 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s[0][0][0].get<double>() - inv_sqrt2) < 1e-12);
  CHECK(std::abs(s[0][0][1].get<double>()) < 1e-12);
  CHECK(std::abs(s[1][1][0].get<double>() + inv_sqrt2) < 1e-12);
}

TEST_CASE("usage, schema, and scope failures map to the exit contract") {
  CHECK(run("wzw 1 1 --emit s").code == 2);     // rank below 2
  CHECK(run("wzw 2 1").code == 2);              // missing --emit
  CHECK(run("wzw 2 1 --emit bogus").code == 2); // unknown selector
  CHECK(run("nonsense 1 2").code == 2);         // unknown subcommand
  CHECK(run("coset 4 2 2 --emit s").code == 3); // non-prime fixed point
  CHECK(run("kw --checks kwc").code == 2);      // no source
  CHECK(run("kw --diagonal 2 1 1 --checks bogus").code == 2);
  CHECK(run("kw --branching /nonexistent/table.json --checks kwc").code == 2);
  CHECK(run("invariant --p 1").code == 2);      // no theory selector
  CHECK(run("invariant --wzw 2 1 --coset 2 1 1 --p 1").code == 2);
  CHECK(run("wzw 2 1 --emit verify --tolerance -1").code == 2);

  const auto scope = run("coset 4 2 2 --emit s");
  CHECK(scope.err.find("scope") != std::string::npos);
}

TEST_CASE("verification emissions succeed on healthy theories") {
  const auto wzw = run("wzw 3 2 --emit verify");
  CHECK(wzw.code == 0);
  CHECK(parse(wzw.out)["pass"] == true);

  const auto coset = run("coset 2 1 1 --emit verify");
  CHECK(coset.code == 0);
  const auto doc = parse(coset.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["axioms"]["pass"] == true);

  const auto sigma = run("coset 2 2 2 --emit sigma-tilde");
  CHECK(sigma.code == 0);
  CHECK(parse(sigma.out)["pass"] == true);
}

TEST_CASE("coset sector listing resolves the fixed orbit into two sectors") {
  const auto r = run("coset 2 2 2 --emit sectors");
  REQUIRE(r.code == 0);
  const auto rows = parse(r.out);
  std::vector<nlohmann::json> split;
  for (const auto& row : rows)
    if (row["mult"].get<int>() == 2) split.push_back(row);
  REQUIRE(split.size() == 2);
  CHECK(split[0]["orbit"] == split[1]["orbit"]);
  CHECK(split[0]["res_index"].get<int>() + split[1]["res_index"].get<int>() ==
        3);
  CHECK(std::abs(split[0]["qdim"].get<double>() -
                 split[1]["qdim"].get<double>()) < 1e-12);
}

TEST_CASE("kw subcommand exit codes track the requested checks") {
  const auto diag = run("kw --diagonal 2 1 1 --checks kwc,kwh,cond2");
  CHECK(diag.code == 0);
  CHECK(parse(diag.out)["pass"] == true);

  const std::string fixture = kDataDir + "/su3_2_su2_8_branching.json";
  const auto kwh = run("kw --branching " + fixture + " --checks kwh");
  CHECK(kwh.code == 1);
  const auto kwh_doc = parse(kwh.out);
  CHECK(kwh_doc["pass"] == false);
  CHECK(kwh_doc["kwh"]["violations"].size() == 3);

  const auto kwc = run("kw --branching " + fixture + " --checks kwc");
  CHECK(kwc.code == 0);
  CHECK(parse(kwc.out)["kwc"]["pass"] == true);

  const std::string bad = kTmp + "/bad_table.json";
  std::ofstream(bad) << "{ not json";
  CHECK(run("kw --branching " + bad + " --checks kwc").code == 2);
}

TEST_CASE("invariant emissions: trivial surgery, unit normalization, probe") {
  const auto p0 = run("invariant --wzw 2 1 --p 0");
  REQUIRE(p0.code == 0);
  const auto doc = parse(p0.out);
  CHECK(doc["p"] == 0);
  CHECK(doc["value"][0].get<double>() == 1.0);
  CHECK(doc["value"][1].get<double>() == 0.0);

  const auto p1 = run("invariant --wzw 2 1 --p 1");
  REQUIRE(p1.code == 0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(parse(p1.out)["value"][0].get<double>() - inv_sqrt2) < 1e-9);

  const auto coset_p1 = run("invariant --coset 2 2 2 --p 1");
  REQUIRE(coset_p1.code == 0);
  CHECK(std::abs(parse(coset_p1.out)["value"][0].get<double>() -
                 1.0 / std::sqrt(48.0)) < 1e-9);

  const auto probe = run("invariant --coset 2 1 1 --p 5 --probe");
  REQUIRE(probe.code == 0);
  const auto pd = parse(probe.out);
  for (const char* key : {"tau_num", "tau_den", "tau_coset", "ratio"})
    REQUIRE(pd["forward"].contains(key));
  CHECK(pd["forward"]["c"] == -1);
  CHECK(pd["reverse"]["c"] == -1);
  CHECK(pd["forward"]["residual"].get<double>() < 1e-9);
}

TEST_CASE("csv flattens complex entries and pretty-table stays readable") {
  const auto t_csv = run("wzw 2 1 --emit t --format csv");
  REQUIRE(t_csv.code == 0);
  CHECK(count_lines(t_csv.out) == 2);
  const auto first = t_csv.out.substr(0, t_csv.out.find('\n'));
  CHECK(std::count(first.begin(), first.end(), ',') == 1);  // re,im

  const auto s_csv = run("wzw 2 1 --emit s --format csv");
  REQUIRE(s_csv.code == 0);
  const auto row = s_csv.out.substr(0, s_csv.out.find('\n'));
  CHECK(std::count(row.begin(), row.end(), ',') == 3);  // two re/im pairs

  const auto table = run("coset 2 2 2 --emit sectors --format pretty-table");
  REQUIRE(table.code == 0);
  CHECK(table.out.find("qdim") != std::string::npos);
  CHECK(table.out.find("univalence_re") != std::string::npos);

  const auto report = run("wzw 2 1 --emit verify --format csv");
  REQUIRE(report.code == 0);
  CHECK(report.out.find("pass,true") != std::string::npos);
}

TEST_CASE("emissions are deterministic across invocations") {
  const auto a = run("coset 2 2 2 --emit sectors");
  const auto b = run("coset 2 2 2 --emit sectors");
  CHECK(a.out == b.out);
  const std::string fixture = kDataDir + "/su3_2_su2_8_branching.json";
  const auto k1 = run("kw --branching " + fixture + " --checks kwh,prop32");
  const auto k2 = run("kw --branching " + fixture + " --checks kwh,prop32");
  CHECK(k1.out == k2.out);
}

TEST_CASE("modular-data cache: hit, tamper, corruption, and version key") {
  const std::string dir = kTmp + "/cache";
  fs::remove_all(dir);
  const std::string flag = " --cache-dir " + dir;

  const auto first = run("wzw 2 2 --emit s" + flag);
  REQUIRE(first.code == 0);
  REQUIRE(fs::exists(dir));
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(dir)) entries.push_back(e.path());
  REQUIRE(entries.size() == 1);
  const fs::path cache_file = entries[0];
  CHECK(cache_file.filename().string().find("wzw-n2-k2") != std::string::npos);
  CHECK(cache_file.filename().string().find("-v") != std::string::npos);

  // Bit-identical second read.
  const auto second = run("wzw 2 2 --emit s" + flag);
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  CHECK(second.err.empty());

  // A well-formed substitute is served verbatim: proof the cache is read.
  std::ofstream(cache_file) << R"({"S":[[[9.0,0.0]]],"T":[[1.0,0.0]]})";
  const auto tampered = run("wzw 2 2 --emit s" + flag);
  CHECK(tampered.code == 0);
  CHECK(parse(tampered.out)[0][0][0].get<double>() == 9.0);

  // A corrupt entry triggers recompute-with-warning and is overwritten.
  std::ofstream(cache_file) << "garbage{{";
  const auto healed = run("wzw 2 2 --emit s" + flag);
  CHECK(healed.code == 0);
  CHECK(healed.out == first.out);
  CHECK(healed.err.find("corrupt") != std::string::npos);
  const auto after = run("wzw 2 2 --emit s" + flag);
  CHECK(after.out == first.out);
  CHECK(after.err.empty());

  // A different code version never reads this entry: the key embeds the
  // version tag, so a renamed entry is invisible.
  const fs::path other = cache_file.parent_path() / "wzw-n2-k2-v9_9_9.json";
  fs::rename(cache_file, other);
  std::ofstream(other) << R"({"S":[[[9.0,0.0]]],"T":[[1.0,0.0]]})";
  const auto fresh = run("wzw 2 2 --emit s" + flag);
  CHECK(fresh.code == 0);
  CHECK(fresh.out == first.out);

  // Environment variable configures the same cache.
  const std::string env_dir = kTmp + "/cache_env";
  fs::remove_all(env_dir);
  const auto via_env =
      run("coset 2 1 1 --emit s", "COSET_CACHE_DIR=" + env_dir);
  CHECK(via_env.code == 0);
  REQUIRE(fs::exists(env_dir));
  bool saw_coset_entry = false;
  for (const auto& e : fs::directory_iterator(env_dir))
    saw_coset_entry |= e.path().filename().string().find("coset-n2-m1-1") !=
                       std::string::npos;
  CHECK(saw_coset_entry);
  const auto env_hit = run("coset 2 1 1 --emit s",
                           "COSET_CACHE_DIR=" + env_dir);
  CHECK(env_hit.out == via_env.out);
}
