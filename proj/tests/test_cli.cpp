#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ballbasis/cli.hpp"
#include "ballbasis/io.hpp"

using namespace ballbasis;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ballbasis_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("basis check exits cleanly and reports the dyadic constants") {
  TempDir tmp;
  const auto report = tmp.file("rep.json");
  const int rc = run_cli({"basis", "check", "--kind", "dyadic", "--depth", "3", "--report",
                          report});
  CHECK(rc == 0);
  const auto j = json::parse(read_file(report));
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("b4").at("K_declared").get<double>() == doctest::Approx(2.0));
  CHECK(j.at("doubling").at("eta_min").get<double>() == doctest::Approx(2.0));
  CHECK(j.contains("_meta"));
}

TEST_CASE("unknown flag exits with the usage code") {
  CHECK(run_cli({"basis", "check", "--no-such-flag"}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
}

TEST_CASE("exptail on a constant function reports a degenerate tail") {
  TempDir tmp;
  const auto out = tmp.file("tail.json");
  // spike f but g derived as local sharp of a constant: use f constant via file
  SpaceBundle bundle;
  for (int i = 0; i < 8; ++i) {
    bundle.coords.push_back(i + 0.5);
    bundle.mu.push_back(1.0 / 8);
  }
  bundle.value = std::vector<double>(8, 2.5);
  const auto csv = tmp.file("const.csv");
  write_file(csv, space_to_csv(bundle));
  const int rc = run_cli({"exptail", "--kind", "dyadic", "--depth", "3", "--f-kind", "file",
                          "--f-file", csv, "--g-kind", "local-sharp", "--g-alpha", "0.9",
                          "--ball", "root", "--ts", "0.5,1,2", "--out", out});
  CHECK(rc == 0);
  const auto j = json::parse(read_file(out));
  CHECK(j.at("degenerate").get<bool>());
}

TEST_CASE("space CSV round trip") {
  SpaceBundle b;
  b.coords = {0.5, 1.5, 2.5};
  b.mu = {0.25, 0.5, 0.25};
  b.value = std::vector<double>{1.0, -2.25, 3.125};
  const auto text = space_to_csv(b);
  const auto back = space_from_csv(text);
  CHECK(back.coords == b.coords);
  CHECK(back.mu == b.mu);
  REQUIRE(back.value);
  CHECK(*back.value == *b.value);
  CHECK_FALSE(back.w);
}

TEST_CASE("basis JSON round trip preserves the structure") {
  const auto basis = build_dyadic(3);
  const auto j = basis_to_json(basis);
  const auto back = basis_from_json(j);
  REQUIRE(back.ball_count() == basis.ball_count());
  for (int id = 0; id < basis.ball_count(); ++id) {
    CHECK(back.ball(id).members == basis.ball(id).members);
    CHECK(back.hull_id(id) == basis.hull_id(id));
  }
  CHECK(back.K() == doctest::Approx(basis.K()));
}

TEST_CASE("tree build writes decay CSV and succeeds on dyadic input") {
  TempDir tmp;
  const auto out = tmp.file("tree.json");
  const auto csv = tmp.file("decay.csv");
  const int rc = run_cli({"tree", "build", "--kind", "dyadic", "--depth", "5", "--f-kind",
                          "gaussian", "--seed", "7", "--alpha", "0.9375", "--out", out,
                          "--csv", csv});
  CHECK(rc == 0);
  const auto j = json::parse(read_file(out));
  CHECK(j.at("all_a21").get<bool>());
  CHECK(j.at("all_a17").get<bool>());
  const auto table = read_file(csv);
  CHECK(table.find("generation,residual_measure,fitted_bound") == 0);
}

TEST_CASE("report bundle is byte-identical across repeated runs") {
  TempDir tmp;
  json config;
  config["seed"] = 42;
  config["basis"] = {{"kind", "dyadic"}, {"depth", 5}};
  config["function"] = {{"kind", "gaussian"}, {"stream", 0}};
  config["g"] = {{"kind", "local-sharp"}, {"alpha", 0.9}};
  config["weight"] = {{"kind", "lebesgue"}, {"delta", 1.0}};
  config["alpha"] = 0.75;
  config["beta"] = 2.0;
  config["run"] = {"basis_check", "weights_check", "dominate", "goodlambda", "exptail",
                   "tree", "normcomp"};
  config["out_dir"] = tmp.file("out1");
  const auto cfg_path = tmp.file("config.json");
  write_file(cfg_path, config.dump(2));

  CHECK(run_cli({"report", "bundle", "--config", cfg_path}) == 0);
  CHECK(run_cli({"report", "bundle", "--config", cfg_path, "--out-dir", tmp.file("out2")}) ==
        0);

  int compared = 0;
  for (const auto& entry : fs::directory_iterator(tmp.file("out1"))) {
    const auto name = entry.path().filename().string();
    const auto a = read_file(entry.path().string());
    const auto b = read_file(tmp.file("out2") + "/" + name);
    CHECK(a == b);
    ++compared;
  }
  CHECK(compared >= 7);
}

TEST_CASE("op estimate prints an estimate") {
  TempDir tmp;
  const auto out = tmp.file("est.json");
  const int rc = run_cli({"op", "estimate", "--kind", "intervals", "--n", "32", "--op",
                          "hilbert", "--which", "weaknorm", "--budget", "20", "--seed", "3",
                          "--out", out});
  CHECK(rc == 0);
  const auto j = json::parse(read_file(out));
  CHECK(j.at("estimate").get<double>() > 0.0);
  CHECK(j.at("kind").get<std::string>() == "empirical lower bound");
}
