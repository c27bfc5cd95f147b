#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "sat2qubo/cli.hpp"
#include "sat2qubo/formula.hpp"

namespace fs = std::filesystem;
using sat2qubo::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("sat2qubo-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = path_ / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("gen") {
  TempDir dir;
  const auto path = dir.file("f.cnf");
  auto r = call({"gen", "-n", "12", "--ratio", "4.2", "-o", path, "--seed", "3"});
  CHECK(r.code == 0);
  auto f = sat2qubo::parse_dimacs(slurp(path));
  CHECK(f.num_vars() == 12);
  CHECK(f.num_clauses() == 51);

  r = call({"gen", "-n", "5", "-m", "21"});
  CHECK(r.code == 0);
  CHECK(sat2qubo::parse_dimacs(r.out).num_clauses() == 21);

  CHECK(call({"gen", "-m", "21"}).code == 2);
  CHECK(call({"gen", "-n", "5", "-m", "21", "--ratio", "4.2"}).code == 2);
  CHECK(call({"gen", "-n", "2", "-m", "1"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("gen is reproducible for a seed") {
  CHECK(call({"--seed", "9", "gen", "-n", "8"}).out == call({"gen", "-n", "8", "--seed", "9"}).out);
  CHECK(call({"gen", "-n", "8", "--seed", "9"}).out != call({"gen", "-n", "8", "--seed", "10"}).out);
}

TEST_CASE("translate") {
  TempDir dir;
  const auto lp = dir.file("lp.cnf", sat2qubo::write_dimacs(fixtures::literal_pair_formula()));
  const auto pat = dir.file("pat.cnf", sat2qubo::write_dimacs(fixtures::pattern_formula()));
  const auto out = dir.file("t.json");

  auto r = call({"translate", lp, "--method", "nuesslein2nm", "-o", out});
  CHECK(r.code == 0);
  CHECK(r.out == "8 logical qubits, 14 couplings\n");
  CHECK(nlohmann::json::parse(slurp(out))["k"] == 8);

  r = call({"translate", pat, out, "--method", "nuessleinnm"});
  CHECK(r.code == 0);
  CHECK(r.out == "5 logical qubits, 6 couplings\n");

  r = call({"translate", pat, "--method", "chancellor", "--chancellor-scale", "ising"});
  CHECK(r.code == 0);
  CHECK(r.err == "5 logical qubits, 9 couplings\n");
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["entries"][0] == nlohmann::json::array({0, 0, -88}));

  r = call({"translate", pat, "--method", "choi", "--X", "2", "--Y", "5", "--Z", "5"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["entries"][0] == nlohmann::json::array({0, 0, -2}));

  CHECK(call({"translate", pat, "--method", "dwave"}).code == 2);
  CHECK(call({"translate", pat, "--method", "choi", "--Y", "2"}).code == 2);
  CHECK(call({"translate", dir.file("missing.cnf"), "--method", "choi"}).code == 3);
  const auto bad = dir.file("bad.cnf", "p cnf 2 1\n1 2 0\n");
  CHECK(call({"translate", bad, "--method", "choi"}).code == 3);
  const auto loose = dir.file("loose.cnf", "p cnf 3 1\n1 -1 2 0\n");
  CHECK(call({"translate", loose, "--method", "choi"}).code == 3);
  CHECK(call({"--permissive", "translate", loose, "--method", "choi"}).code == 3);
}

TEST_CASE("solve") {
  TempDir dir;
  const auto lp = dir.file("lp.cnf", sat2qubo::write_dimacs(fixtures::literal_pair_formula()));
  const auto pat = dir.file("pat.cnf", sat2qubo::write_dimacs(fixtures::pattern_formula()));

  auto r = call({"solve", pat, "--method", "nuessleinnm", "--solver", "exhaustive"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["energy"] == -1);
  CHECK(doc["satisfied"] == 2);
  CHECK(doc["evaluations"] == 32);

  r = call({"solve", lp, "--method", "nuesslein2nm", "--solver", "exhaustive"});
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["energy"] == -2);
  CHECK(doc["satisfied"] == 2);

  // translation JSON in, SA solver, config file
  const auto tj = dir.file("t.json");
  REQUIRE(call({"translate", lp, "--method", "nuesslein2nm", "-o", tj}).code == 0);
  const auto cfg = dir.file("sa.json", R"({"solver": {"sweeps": 300, "restarts": 5}})");
  r = call({"solve", tj, "--config", cfg, "--seed", "4"});
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["energy"] == -2);
  CHECK(doc["restarts_used"] == 5);
  CHECK(doc["assignment"].get<std::string>().size() == 3);
  CHECK(r.out == call({"solve", tj, "--config", cfg, "--seed", "4"}).out);

  // bare QUBO in
  const auto q = dir.file("q.json", R"({"k":2,"entries":[[0,0,-2],[0,1,3]]})");
  r = call({"solve", q, "--solver", "exhaustive"});
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["best_bits"] == "10");
  CHECK(doc["energy"] == -2);

  // k = 30 is over the exhaustive cap
  const auto big = dir.file("big.cnf", sat2qubo::write_dimacs(sat2qubo::random_3sat(10, 10, 1)));
  r = call({"solve", big, "--method", "choi", "--solver", "exhaustive"});
  CHECK(r.code == 2);
  CHECK(r.err.find("cap") != std::string::npos);

  CHECK(call({"solve", pat, "--solver", "exhaustive"}).code == 2);  // DIMACS without method
  CHECK(call({"solve", pat, "--method", "choi", "--sweeps", "0"}).code == 2);
  const auto broken = dir.file("broken.json", R"({"k":2,"entries":[[1,0,1]]})");
  CHECK(call({"solve", broken}).code == 3);
}

TEST_CASE("verify") {
  auto r = call({"verify", "--count", "20", "--seed", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0 failures") != std::string::npos);
  r = call({"verify", "--count", "0"});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  r = call({"verify", "--count", "5", "--methods", "choi,nuessleinnm", "--n-range", "4:5",
            "--m-range", "2:3"});
  CHECK(r.code == 0);
  CHECK(call({"verify", "--n-range", "3-6"}).code == 2);
  CHECK(call({"verify", "--methods", "foo"}).code == 2);
}

TEST_CASE("scaling") {
  TempDir dir;
  const auto csv = dir.file("s.csv");
  const auto summary = dir.file("s.txt");
  auto r = call({"scaling", "--n", "20:200:20", "--replicates", "20", "-o", csv, "--summary",
                 summary});
  CHECK(r.code == 0);
  const auto text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 10 * 20);
  CHECK(text.rfind("n,m,method,replicate,seed,logical_qubits,couplings\n", 0) == 0);
  CHECK(!slurp(summary).empty());

  r = call({"--format", "json", "scaling", "--n", "10,20", "--replicates", "2"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).size() == 8);

  CHECK(call({"scaling", "--n", "20:10"}).code == 2);
  CHECK(call({"scaling", "--n", "a:b"}).code == 2);
  CHECK(call({"scaling", "--n", "20:200:0"}).code == 2);
  CHECK(call({"scaling", "--n", "10", "-o", (fs::path(dir.file("nodir")) / "x.csv").string()})
            .code == 3);
}

TEST_CASE("compare") {
  TempDir dir;
  const auto csv = dir.file("c.csv");
  auto r = call({"compare", "--sizes", "5x21,6x10", "--replicates", "2", "--sweeps", "50",
                 "--restarts", "2", "-o", csv});
  CHECK(r.code == 0);
  CHECK(r.out.find("(V=5, C=21)") != std::string::npos);
  CHECK(r.out.find("(V=6, C=10)") != std::string::npos);
  const auto text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 2 * 4);
  CHECK(call({"compare", "--sizes", "5by21"}).code == 2);
  CHECK(call({"compare", "--sizes", "2x5"}).code == 2);
}
