#include <catch2/catch_amalgamated.hpp>

#include <twlab/commands.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace twlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("twlab_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("coefficient cache round-trips exactly", "[cache][property]") {
  TempDir tmp;
  auto original = side_series(1, 12).series;
  const std::string file = (tmp.path / "side_s1.json").string();
  save_series(original, file);
  auto loaded = load_series(file);

  REQUIRE(loaded.well == original.well);
  REQUIRE(loaded.state_index == original.state_index);
  REQUIRE(loaded.parity == original.parity);
  REQUIRE(loaded.order() == original.order());
  for (unsigned m = 0; m <= original.order(); ++m) REQUIRE(loaded.c(m) == original.c(m));
}

TEST_CASE("cache rejects tampering and foreign states", "[cache]") {
  TempDir tmp;
  auto s = central_series(0, 0, 5).series;
  const std::string file = (tmp.path / "central_s0.json").string();
  save_series(s, file);

  SECTION("checksum mismatch after editing the state field") {
    nlohmann::json j;
    {
      std::ifstream in(file);
      in >> j;
    }
    j["state"] = 1;
    {
      std::ofstream out(file);
      out << j.dump();
    }
    REQUIRE_THROWS_AS(load_series(file), CacheError);
  }

  SECTION("version mismatch") {
    nlohmann::json j;
    {
      std::ifstream in(file);
      in >> j;
    }
    j["format_version"] = 99;
    {
      std::ofstream out(file);
      out << j.dump();
    }
    REQUIRE_THROWS_AS(load_series(file), CacheError);
  }

  SECTION("garbage file") {
    std::ofstream(file) << "not json at all";
    REQUIRE_THROWS_AS(load_series(file), CacheError);
  }

  SECTION("requesting a different state through ensure_series") {
    REQUIRE_THROWS_AS(ensure_series(Well::side, 0, 5, file), CacheError);
  }
}

TEST_CASE("ensure_series loads, extends and persists", "[cache]") {
  TempDir tmp;
  const std::string file = (tmp.path / "central_s0.json").string();

  auto first = ensure_series(Well::central, 0, 5, file);
  REQUIRE(first.order() == 5);
  REQUIRE(first.c(0) == Rational(1, 2));

  // a longer request regenerates and overwrites
  auto longer = ensure_series(Well::central, 0, 9, file);
  REQUIRE(longer.order() == 9);
  REQUIRE(load_series(file).order() == 9);

  // a shorter request reuses the cached, longer series
  auto reused = ensure_series(Well::central, 0, 3, file);
  REQUIRE(reused.order() == 9);
}

TEST_CASE("series command writes the cache described in its report", "[commands]") {
  TempDir tmp;
  RunConfig cfg;
  cfg.command = "series";
  cfg.well = Well::central;
  cfg.state = 0;
  cfg.order = 7;
  cfg.format = RunConfig::Format::json;
  cfg.cache_path = (tmp.path / "c.json").string();

  auto res = run_command(cfg);
  REQUIRE(res.exit_code == 0);

  auto cached = load_series(cfg.cache_path);
  REQUIRE(cached.order() == 7);
  REQUIRE(cached.c(0) == Rational(1, 2));
  REQUIRE(cached.c(1) == Rational(-3, 4));

  SECTION("order zero yields a header-only cache") {
    RunConfig zero = cfg;
    zero.order = 0;
    zero.cache_path = (tmp.path / "z.json").string();
    run_command(zero);
    nlohmann::json j;
    std::ifstream in(zero.cache_path);
    in >> j;
    REQUIRE(j.at("coefficients").empty());
    REQUIRE(j.at("c0").at("num").get<std::string>() == "1");
    REQUIRE(j.at("c0").at("den").get<std::string>() == "2");
  }
}

TEST_CASE("identical run configurations give byte-identical output", "[commands][property]") {
  TempDir tmp;
  RunConfig cfg;
  cfg.command = "table";
  cfg.table_id = "IV";
  cfg.omegas = {Rational(30)};
  cfg.format = RunConfig::Format::json;
  cfg.cache_path = tmp.path.string();

  auto a = run_command(cfg);
  auto b = run_command(cfg);
  REQUIRE(a.output == b.output);
  REQUIRE(a.exit_code == 0);

  RunConfig np;
  np.command = "nonpert";
  np.omegas = {Rational(30)};
  np.format = RunConfig::Format::json;
  REQUIRE(run_command(np).output == run_command(np).output);
}

TEST_CASE("worker budget does not change results", "[commands][property]") {
  RunConfig cfg;
  cfg.command = "table";
  cfg.table_id = "III";
  cfg.omegas = {Rational(30), Rational(50)};
  cfg.format = RunConfig::Format::json;

  auto serial = run_command(cfg);
  cfg.jobs = 2;
  auto parallel = run_command(cfg);
  REQUIRE(serial.output == parallel.output);
}

TEST_CASE("golden table mode exit codes", "[commands]") {
  TempDir tmp;
  RunConfig cfg;
  cfg.command = "table";
  cfg.table_id = "I";
  cfg.omegas = {Rational(30), Rational(50), Rational(70), Rational(90), Rational(110)};
  REQUIRE(run_command(cfg).exit_code == 0);

  SECTION("a failing cell drives the exit code") {
    TableReport rep;
    rep.id = "X";
    rep.cells.push_back({"r", "c", "1.0", "2.0", false, false, false});
    REQUIRE_FALSE(rep.all_pass());
    REQUIRE(rep.failures() == 1);
    REQUIRE(render_markdown(rep).find("FAIL") != std::string::npos);
  }

  SECTION("skipped cells block a clean pass") {
    TableReport rep;
    rep.id = "X";
    rep.cells.push_back({"r", "c", "", "2.0", false, false, true});
    REQUIRE_FALSE(rep.all_pass());
    REQUIRE(rep.failures() == 0);
    REQUIRE(rep.skipped() == 1);
  }
}

TEST_CASE("run configuration validation", "[commands]") {
  RunConfig cfg;
  cfg.command = "nonpert";
  cfg.branch = 0;
  REQUIRE_THROWS_AS(run_command(cfg), std::invalid_argument);
  cfg.branch = 1;
  cfg.precision = 8;
  REQUIRE_THROWS_AS(run_command(cfg), std::invalid_argument);
  cfg.precision = 50;
  cfg.omegas = {Rational(-3)};
  REQUIRE_THROWS_AS(run_command(cfg), std::invalid_argument);
  cfg.omegas = {Rational(30)};
  cfg.command = "bogus";
  REQUIRE_THROWS_AS(run_command(cfg), std::invalid_argument);
  cfg.command = "table";
  cfg.table_id = "V";
  REQUIRE_THROWS_AS(run_command(cfg), std::invalid_argument);
}

TEST_CASE("default cache directory honours TWLAB_CACHE_DIR", "[cache]") {
  TempDir tmp;
  setenv("TWLAB_CACHE_DIR", tmp.path.c_str(), 1);
  REQUIRE(default_cache_dir() == tmp.path.string());

  RunConfig cfg;
  cfg.command = "series";
  cfg.well = Well::side;
  cfg.state = 0;
  cfg.order = 3;
  run_command(cfg);
  REQUIRE(fs::exists(tmp.path / "side_s0.json"));
  unsetenv("TWLAB_CACHE_DIR");
}
