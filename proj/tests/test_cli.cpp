#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "qcurve/cache.hpp"
#include "qcurve/catalan.hpp"
#include "qcurve/cli.hpp"
#include "qcurve/hurwitz.hpp"
#include "qcurve/version.hpp"

using namespace qcurve;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qcurve");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("qcurve_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("catalan subcommand") {
  const Result r = run_cli({"catalan", "--g", "0", "--n", "1", "--mu", "6", "--format", "json"});
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["value"] == "5");
  CHECK(j["version"] == kVersion);
  CHECK(j["seed"] == 42);
  CHECK(r.err.find("elapsed_ms") != std::string::npos);

  const Result o = run_cli({"catalan", "--g", "1", "--n", "2", "--mu", "3,1", "--oracle"});
  CHECK(o.status == 0);
  CHECK(json::parse(o.out)["oracle_match"] == true);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({"catalan", "--g", "0", "--n", "1"}).status == 2);
  CHECK(run_cli({"catalan", "--g", "0", "--n", "2", "--mu", "6"}).status == 2);
  CHECK(run_cli({"frobnicate"}).status == 2);
  CHECK(run_cli({"catalan", "--g", "0", "--n", "1", "--mu", "6", "--bogus"}).status == 2);
  CHECK(run_cli({}).status == 2);
  CHECK(run_cli({"catalan", "--g", "0", "--n", "1", "--mu", "14", "--oracle"}).status == 2);
  CHECK(run_cli({"free-energy", "--g", "0", "--n", "2"}).status == 2);
  CHECK(run_cli({"intersect", "--g", "1", "--n", "1", "--d", "2"}).status == 2);
  CHECK(run_cli({"catalan", "--g", "0", "--n", "1", "--mu", "6", "--format", "xml"}).status == 2);
  const Result missing = run_cli({"catalan", "--g", "0", "--n", "1"});
  CHECK(missing.err.find("mu") != std::string::npos);
}

TEST_CASE("failed verification exits with 1") {
  CHECK(run_cli({"wkb-verify", "--order", "2", "--f11-scale", "2"}).status == 1);
  const Result ok = run_cli({"wkb-verify", "--order", "0"});
  CHECK(ok.status == 0);
  CHECK(json::parse(ok.out)["ok"] == true);
}

TEST_CASE("other subcommands") {
  const Result f = run_cli({"free-energy", "--g", "1", "--n", "1"});
  CHECK(f.status == 0);
  const json fj = json::parse(f.out);
  CHECK(fj["checks"]["F(1,...,1)"] == "1/12");
  CHECK(fj["laurent"]["variables"] == json::array({"t1"}));
  CHECK(fj["laurent"]["terms"][0] == json::array({json::array({-3}), "-1/384"}));

  const Result i = run_cli({"intersect", "--g", "1", "--n", "1", "--d", "1"});
  CHECK(i.status == 0);
  CHECK(json::parse(i.out)["query"]["value"] == "1/24");

  const Result h = run_cli({"hurwitz", "--r", "3", "--g", "0", "--mu", "3", "--oracle"});
  CHECK(h.status == 0);
  CHECK(json::parse(h.out)["value"] == "1/3");

  const Result v = run_cli({"verify-oper", "--trials", "3", "--rank", "3", "--q-degree", "2", "--seed", "5"});
  CHECK(v.status == 0);
  const json vj = json::parse(v.out);
  CHECK(vj["ok"] == true);
  CHECK(vj["seed"] == 5);
}

TEST_CASE("output formats and byte stability") {
  const std::vector<std::string> args{"catalan", "--g", "0", "--n", "1", "--mu", "6"};
  auto with = [&](const std::string& fmt) {
    auto a = args;
    a.insert(a.end(), {"--format", fmt});
    return run_cli(a).out;
  };
  CHECK(with("csv").find("value,5\n") != std::string::npos);
  CHECK(with("csv").rfind("key,value\n", 0) == 0);
  CHECK(with("plain").find("value: 5\n") != std::string::npos);
  CHECK(with("plain").find("mu[0]: 6\n") != std::string::npos);
  CHECK(run_cli(args).out == run_cli(args).out);
  CHECK(cli::render(json{{"a", "x,y"}}, cli::Format::Csv) == "key,value\na,\"x,y\"\n");
}

TEST_CASE("cache round trip of a catalan table") {
  const fs::path dir = fresh_dir("roundtrip");
  CatalanTable table;
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; b <= a; ++b) catalan_number({1, {a, b}}, table);
  REQUIRE(table.size() >= 100);
  CHECK(save_catalan_cache(dir, table) == table.size());
  CHECK(save_catalan_cache(dir, table) == 0);

  CatalanTable reloaded;
  const CacheLoadReport rep = load_catalan_cache(dir, reloaded);
  CHECK(rep.loaded == table.size());
  CHECK(rep.quarantined == 0);
  CHECK(reloaded.snapshot() == table.snapshot());

  HurwitzTable ht;
  hurwitz_number({2, 1, {2, 2}}, ht);
  save_hurwitz_cache(dir, ht);
  HurwitzTable ht2;
  load_hurwitz_cache(dir, ht2);
  CHECK(ht2.snapshot() == ht.snapshot());
  fs::remove_all(dir);
}

TEST_CASE("tampered line is quarantined and recomputed") {
  const fs::path dir = fresh_dir("tamper");
  CatalanTable table;
  catalan_number({0, {6}}, table);
  save_catalan_cache(dir, table);
  const fs::path file = dir / "catalan.jsonl";
  std::string text = slurp(file);
  const std::string needle = "\"mu\":[6],\"value\":\"5\"";
  REQUIRE(text.find(needle) != std::string::npos);
  text.replace(text.find(needle), needle.size(), "\"mu\":[6],\"value\":\"6\"");
  std::ofstream(file) << text;

  CatalanTable reloaded;
  const CacheLoadReport rep = load_catalan_cache(dir, reloaded);
  CHECK(rep.quarantined == 1);
  CHECK_FALSE(rep.warnings.empty());
  CHECK_FALSE(reloaded.contains(CatalanKey{0, {6}}));
  CHECK(fs::exists(dir / "catalan.jsonl.quarantine"));
  CHECK(catalan_number({0, {6}}, reloaded) == 5);

  // the same through the tool: warning on stderr, correct value on stdout
  std::ofstream(file) << text;
  const Result r = run_cli({"catalan", "--g", "0", "--n", "1", "--mu", "6", "--cache-dir", dir.string()});
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["value"] == "5");
  CHECK(r.err.find("warning") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("schema version mismatch rebuilds") {
  const fs::path dir = fresh_dir("version");
  CatalanTable table;
  catalan_number({1, {4, 2}}, table);
  save_catalan_cache(dir, table);
  const fs::path file = dir / "catalan.jsonl";
  std::string text = slurp(file);
  const std::string needle = "\"version\":1";
  REQUIRE(text.find(needle) != std::string::npos);
  text.replace(text.find(needle), needle.size(), "\"version\":2");
  std::ofstream(file) << text;

  CatalanTable reloaded;
  const CacheLoadReport rep = load_catalan_cache(dir, reloaded);
  CHECK(rep.rebuilt);
  CHECK(rep.loaded == 0);
  CHECK(reloaded.size() == 0);
  CHECK(slurp(file).find("\"version\":1") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cache subcommands and the environment variable") {
  const fs::path dir = fresh_dir("cmd");
  CHECK(run_cli({"cache", "inspect"}).status == 2);
  ::setenv("QCURVE_CACHE_DIR", dir.string().c_str(), 1);
  CHECK(run_cli({"catalan", "--g", "0", "--n", "2", "--mu", "2,2"}).status == 0);
  const Result ins = run_cli({"cache", "inspect"});
  CHECK(ins.status == 0);
  const json j = json::parse(ins.out);
  bool found = false;
  for (const auto& f : j["files"])
    if (f["kind"] == "catalan") found = f["present"].get<bool>() && f["entries"].get<int>() > 0;
  CHECK(found);
  CHECK(run_cli({"cache", "clear"}).status == 0);
  CHECK_FALSE(fs::exists(dir / "catalan.jsonl"));
  ::unsetenv("QCURVE_CACHE_DIR");
  fs::remove_all(dir);
}

TEST_CASE("installed binary maps missing arguments to exit 2") {
  const std::string cmd = std::string("\"") + QCURVE_BINARY + "\" catalan --g 0 --n 1 >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(raw) == 2);
  const std::string ok = std::string("\"") + QCURVE_BINARY + "\" catalan --g 0 --n 1 --mu 6 >/dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(ok.c_str())) == 0);
}
