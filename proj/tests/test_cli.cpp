#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "chabauty/cli.hpp"
#include "chabauty/descriptors.hpp"
#include "chabauty/sphere.hpp"
#include "support.hpp"

using namespace chabauty;
namespace fs = std::filesystem;
using cli::run;

namespace {

cli::CommandResult run_json(std::vector<std::string> args) {
  args.push_back("--json");
  return run(args);
}

std::string full(double x) {
  std::ostringstream o;
  o.precision(17);
  o << x;
  return o.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "chabauty-cli-tests";
  fs::create_directories(dir);
  return dir / name;
}

int binary_exit(const std::string& args) {
  std::string cmd = std::string(CHABAUTY_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("json schemas match the golden key sets") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(CHABAUTY_GOLDEN_DIR)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    json g = json::parse(in);
    auto res = run_json(g.at("args").get<std::vector<std::string>>());
    CAPTURE(entry.path().filename().string());
    std::vector<std::string> keys;
    for (auto& [k, v] : res.payload.items()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    CHECK(keys == g.at("keys").get<std::vector<std::string>>());
    // the printed text is the payload itself
    CHECK(json::parse(res.ok() ? res.text : res.error) == res.payload);
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("classify example") {
  auto r = run_json({"classify", "--space", "C", R"({"gens":[["1","0"],["0","1"]]})"});
  REQUIRE(r.ok());
  CHECK(r.payload["stratum"] == "lattice");
  CHECK(r.payload["covolume"].get<double>() == doctest::Approx(1).epsilon(1e-12));
  auto s = run_json({"classify", "--space", "C", R"j({"gens":[["1","0"],["sqrt(2)","0"]]})j"});
  REQUIRE(s.ok());
  CHECK(s.payload["stratum"] == "line");
}

TEST_CASE("descriptors printed by the cli parse back to the same subgroup") {
  testing::Rng r(91);
  for (auto st : testing::all_strata()) {
    for (int i = 0; i < 10; ++i) {
      auto c = testing::random_subgroup(r, st);
      auto res = run_json({"classify", "--space", "C", to_json(c).dump()});
      REQUIRE(res.ok());
      auto back = parse_subgroup_c(res.payload["descriptor"]);
      CHECK(approx_equal(back, c, 1e-12));
      // printing again is a fixed point
      CHECK(to_json(back) == res.payload["descriptor"]);
    }
  }
  for (const char* d : {R"({"trivial": true})", R"({"full": true})", R"({"cyclic": "3/4"})", R"({"param": 0.5})"}) {
    auto res = run_json({"classify", "--space", "R", d});
    REQUIRE(res.ok());
    CHECK(parse_subgroup_r(res.payload["descriptor"]) == parse_subgroup_r(json::parse(d)));
  }
  std::vector<std::string> heis{
      R"({"kind": "heis-lattice", "z": ["1", "0"], "zp": ["0", "1"], "n": 3})",
      R"({"kind": "heis-lattice", "z": [1.5, 0.2], "zp": [0.1, 0.9], "t": 0.3, "tp": 0.1, "n": 2})",
      R"({"kind": "trivial"})",
      R"({"kind": "full"})",
      R"({"kind": "central", "sub": {"cyclic": 2}})",
      R"({"kind": "planar", "u": [0, 1], "sub": {"stratum": "lattice", "z": [1, 0], "zp": [0, 1]}})",
      R"({"kind": "pullback", "base": {"stratum": "cyclic", "omega": [1, 1]}})",
      R"({"kind": "heis-gens", "gens": [["1", "0", "0"], ["0", "1", "0"]]})"};
  for (const auto& d : heis) {
    CAPTURE(d);
    auto res = run_json({"classify", "--space", "H", d});
    REQUIRE(res.ok());
    auto once = parse_heis(res.payload["descriptor"]);
    CHECK(to_json(once) == res.payload["descriptor"]);
    CHECK(classify_heis(once).label == res.payload["label"]);
  }
  auto lam = run_json({"heis", "make-lambda", "--n", "4"});
  auto back = parse_heis_lattice(lam.payload["descriptor"]);
  CHECK(approx_equal(back, make_lambda_n(4)));
  CHECK(back.exact.has_value());
  CHECK(lam.payload["descriptor"]["z"][0].is_string());
}

TEST_CASE("exit codes") {
  CHECK(run({}).exit_code == cli::kUsage);
  CHECK(run({"nonsense"}).exit_code == cli::kUsage);
  CHECK(run({"classify", "--space", "Q", "{}"}).exit_code == cli::kParse);
  CHECK(run({"classify", "--space", "C", "{broken"}).exit_code == cli::kParse);
  CHECK(run({"classify", "--space", "C", R"({"gens": [[1.5, 0]]})"}).exit_code == cli::kParse);
  CHECK(run({"classify", "--space", "C", "/no/such/file.json"}).exit_code == cli::kParse);
  CHECK(run({"classify", "--space", "C", R"({"stratum": "lattice", "z": [1, 0], "zp": [2, 0]})"}).exit_code ==
        cli::kParse);
  // the bracket top fails: numeric failure with a residual
  fs::remove(scratch("cfg.json"));
  auto r = run_json({"dist", "--space", "R", R"({"cyclic": 1})", R"({"trivial": true})", "--config",
                     scratch("cfg.json").string()});
  CHECK(r.exit_code == cli::kParse);  // config file missing
  {
    std::ofstream(scratch("cfg.json")) << R"({"eps_max": 0.3})";
  }
  r = run_json({"dist", "--space", "R", R"({"cyclic": 1})", R"({"trivial": true})", "--config", scratch("cfg.json").string()});
  CHECK(r.exit_code == cli::kNumeric);
  CHECK(r.payload.contains("residual"));
  CHECK(run({"invariants", R"({"stratum": "lattice", "z": [1, 0], "zp": [0, 1]})", "--method", "bogus"}).exit_code ==
        cli::kUsage);
  CHECK(run({"invariants", R"({"stratum": "line", "u": [1, 0]})"}).exit_code == cli::kUsage);

  CHECK(binary_exit("classify --space C '{\"stratum\": \"zero\"}'") == 0);
  CHECK(binary_exit("classify --space C '{oops'") == 3);
  CHECK(binary_exit("--no-such-flag") == 2);
}

TEST_CASE("dist and config") {
  auto r = run_json({"dist", "--space", "R", R"({"cyclic": "1"})", R"({"trivial": true})", "--tol", "1e-3"});
  REQUIRE(r.ok());
  double d = r.payload["distance"];
  CHECK(d == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(2e-3));
  CHECK(d - r.payload["lower"].get<double>() <= 1e-3);
  {
    std::ofstream(scratch("req.json")) << R"({"space": "C", "lhs": {"stratum": "zero"}, "rhs": {"stratum": "full"}, "tol": 1e-3})";
  }
  auto q = run_json({"dist", "--request", scratch("req.json").string()});
  REQUIRE(q.ok());
  CHECK(std::abs(q.payload["distance"].get<double>() - 1 / std::sqrt(2.0)) <= 1e-3);
  // the flag overrides the config
  {
    std::ofstream(scratch("cfg2.json")) << R"({"tol": 0.1})";
  }
  auto f = run_json({"dist", "--space", "C", R"({"stratum": "zero"})", R"({"stratum": "full"})", "--config",
                     scratch("cfg2.json").string(), "--tol", "1e-3"});
  REQUIRE(f.ok());
  CHECK(f.payload["tol"].get<double>() == 1e-3);
}

TEST_CASE("limit over the sheared family") {
  auto a = R"({"kind": "planar", "u": [1, 0], "sub": {"stratum": "lattice", "z": [1, 0], "zp": [0, 1]}})";
  auto ok = run_json({"limit", "--space", "H", "--limit", a, "--example11", "1", "--k-from", "30", "--k-to", "34"});
  REQUIRE(ok.ok());
  CHECK(ok.payload["pass"] == true);
  auto k8 = run_json({"heis", "example11", "--n", "1", "--k", "8"});
  REQUIRE(k8.ok());
  CHECK(k8.payload["n"] == 1);
  auto bad = run_json({"limit", "--space", "H", "--limit", a, k8.payload["descriptor"].dump()});
  REQUIRE(bad.ok());
  CHECK(bad.payload["pass"] == false);
}

TEST_CASE("heis subcommands") {
  auto l2 = R"({"kind": "heis-lattice", "z": ["1", "0"], "zp": ["0", "1"], "n": 2})";
  auto m = run_json({"heis", "member", l2, R"(["1", "1", "0"])"});
  REQUIRE(m.ok());
  CHECK(m.payload["member"] == true);
  CHECK(m.payload["exact"] == true);
  CHECK(run_json({"heis", "member", l2, R"(["0", "0", "1/4"])"}).payload["member"] == false);
  CHECK(run_json({"heis", "member", l2, R"(["0", "0", "1/2"])"}).payload["member"] == true);
  auto c = run_json({"heis", "commutator", l2});
  CHECK(c.payload["step"].get<double>() == doctest::Approx(1));
  CHECK(run_json({"heis", "index", l2}).payload["index"] == 2);
  auto img = run_json({"heis", "aut", l2, "--matrix", "2", "0", "0", "2"});
  REQUIRE(img.ok());
  CHECK(img.payload["n"] == 2);
  auto back = parse_heis_lattice(img.payload["descriptor"]);
  CHECK(approx_equal(back, dilate_lattice(2, make_lambda_n(2)), 1e-12));
}

TEST_CASE("sphere commands") {
  auto zero = run_json({"sphere-fwd", "0", "0", "0", "0"});
  CHECK(zero.payload["stratum"] == "zero");
  CHECK(run_json({"sphere-fwd", "--infinity"}).payload["stratum"] == "full");
  auto p = trefoil_samples(8)[3];
  auto knot = run_json({"sphere-fwd", full(p.a.real()), full(p.a.imag()), full(p.b.real()), full(p.b.imag())});
  CHECK(knot.payload["curve"] == "on_knot");
  auto fwd = run_json({"sphere-fwd", "0.6", "0", "0.3", "0"});
  REQUIRE(fwd.ok());
  auto inv = run_json({"sphere-inv", fwd.payload["descriptor"].dump()});
  REQUIRE(inv.ok());
  CHECK(inv.payload["a"][0].get<double>() == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(inv.payload["b"][0].get<double>() == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("emit-plot trefoil") {
  auto out = scratch("trefoil.csv");
  auto r = run_json({"emit-plot", "trefoil", "--samples", "360", "--out", out.string()});
  REQUIRE(r.ok());
  auto rows = read_csv(out);
  REQUIRE(rows.size() == 361);
  CHECK(rows[0] == std::vector<std::string>{"a_re", "a_im", "b_re", "b_im"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    Complex a(std::stod(rows[i][0]), std::stod(rows[i][1])), b(std::stod(rows[i][2]), std::stod(rows[i][3]));
    CHECK(std::abs(a * a * a - 27.0 * b * b) <= 1e-9);
    CHECK(std::abs(std::sqrt(std::norm(a) + std::norm(b)) - 1) <= 1e-9);
  }
  CHECK(run({"emit-plot", "trefoil", "--out", "/no/such/dir/x.csv"}).exit_code != cli::kOk);
}

TEST_CASE("emit-plot strata-sample") {
  auto out = scratch("strata.csv");
  REQUIRE(run_json({"emit-plot", "strata-sample", "--grid", "21", "--axis", "a", "--out", out.string()}).ok());
  auto rows = read_csv(out);
  REQUIRE(rows.size() == 22);
  CHECK(rows[0] == std::vector<std::string>{"a_re", "a_im", "b_re", "b_im", "stratum", "covol"});
  CHECK(rows[1][4] == "zero");
  bool lattice_seen = false;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    // each label agrees with the sphere map
    double a = std::stod(rows[i][0]), b = std::stod(rows[i][2]);
    auto c = forward_f(SpherePoint::finite(a, b));
    CHECK(rows[i][4] == stratum_name(c.stratum()));
    if (rows[i][4] == "lattice") lattice_seen = true;
  }
  CHECK(lattice_seen);
  REQUIRE(run_json({"emit-plot", "strata-sample", "--grid", "5", "--axis", "plane", "--out", out.string()}).ok());
  CHECK(read_csv(out).size() == 26);
}

TEST_CASE("emit-plot example11-trace") {
  auto out = scratch("trace.csv");
  REQUIRE(run_json({"emit-plot", "example11-trace", "--n", "1", "--k-max", "32", "--out", out.string()}).ok());
  auto rows = read_csv(out);
  REQUIRE(rows.size() == 33);
  CHECK(rows[0] == std::vector<std::string>{"k", "distance"});
  auto d = [&](int k) { return std::stod(rows[k][1]); };
  // strictly decreasing along doubling k; between doublings the distance has
  // plateaus where 1/eps - eps crosses an integer, and is not monotone
  for (int k : {2, 4, 8, 16, 32}) CHECK(d(k) < d(k / 2));
  CHECK(std::abs(d(4) - (std::sqrt(2.0) - 1)) <= 1e-3);
  for (int k : {7, 8, 9}) CHECK(std::abs(d(k) - (std::sqrt(13.0) - 3) / 2) <= 1e-3);
  CHECK(d(4) > d(3));
}

}
