#include <random>
#include <string>
#include <vector>

#include "doctest.h"

#include "casimir/cli/config.hpp"
#include "casimir/error.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

std::string error_parameter(Command command, const std::string& text) {
  try {
    parse_config(command, text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
    return e.parameter();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("minimal configs fill defaults") {
  const auto te = parse_config(Command::te3, R"({"model": {"kind": "te3"}})");
  CHECK(te.model.kind == ModelKind::te3);
  CHECK(te.model.a1 == 1.0);
  REQUIRE(te.model.mediators.size() == 1);
  CHECK(te.model.mediators[0].c == 0.3);
  CHECK(te.sweep.variable == SweepConfig::Variable::T);
  CHECK(te.sweep.min == 0.01);
  CHECK(te.sweep.max == 100.0);
  CHECK(te.output.format == Format::csv);
  CHECK(te.tolerance == ThermoOptions{});

  CHECK(parse_config(Command::tm3, "{}") == default_config(Command::tm3));

  const auto bath = parse_config(Command::bath, R"({"model": {"kind": "te_bath"}})");
  CHECK(bath.model.kind == ModelKind::te_bath);
  REQUIRE(bath.bath.has_value());
  CHECK(bath.model.mediators.size() == 4);

  const auto dipole = parse_config(Command::dipole, "{}");
  CHECK(dipole.sweep.variable == SweepConfig::Variable::r);
}

TEST_CASE("explicit values are read") {
  const auto cfg = parse_config(Command::bath, R"({
    "model": {"kind": "tm_bath", "a1": 2, "a2": 0.5, "mediators": [{"a": 1.5, "c": 0.1}, {"a": 3, "c": -0.2}]},
    "sweep": {"T_min": 0.1, "T_max": 10, "points": 7, "spacing": "linear"},
    "output": {"format": "json", "path": "x.json"},
    "tolerance": {"rel_tol": 1e-12, "n_max_cap": 1000000, "derivative_step": 1e-3}
  })");
  CHECK(cfg.model.a1 == 2.0);
  CHECK_FALSE(cfg.bath.has_value());
  REQUIRE(cfg.model.mediators.size() == 2);
  CHECK(cfg.model.mediators[1].c == -0.2);
  CHECK(cfg.sweep.points == 7);
  CHECK(cfg.sweep.spacing == Spacing::linear);
  CHECK(cfg.output.format == Format::json);
  CHECK(cfg.output.path == "x.json");
  CHECK(cfg.tolerance.rel_tol == 1e-12);
  CHECK(cfg.tolerance.n_max_cap == 1000000);

  const auto d = parse_config(Command::dipole, R"({"model": {"g1": 0.2, "r": 3}, "sweep": {"T_min": 1, "T_max": 2}})");
  CHECK(d.dipole.g1 == 0.2);
  CHECK(d.dipole.r == 3.0);
  CHECK(d.sweep.variable == SweepConfig::Variable::T);
  CHECK(d.sweep.min == 1.0);
}

TEST_CASE("schema violations name the key path") {
  CHECK(error_parameter(Command::te3, R"({"sweep": {"T_min": 0}})") == "sweep.T_min");
  CHECK(error_parameter(Command::te3, R"({"sweep": {"T_min": -1}})") == "sweep.T_min");
  CHECK(error_parameter(Command::tm3, R"({"sweep": {"T_min": 5, "T_max": 1}})") == "sweep.T_max");
  CHECK(error_parameter(Command::tm3, R"({"sweep": {"points": 0}})") == "sweep.points");
  CHECK(error_parameter(Command::tm3, R"({"sweep": {"points": 2.5}})") == "sweep.points");
  CHECK(error_parameter(Command::tm3, R"({"sweep": {"spacing": "cubic"}})") == "sweep.spacing");
  CHECK(error_parameter(Command::bath, R"({"model": {"kind": "tm_bath", "bath": {"N": 0}}})") == "model.bath.N");
  CHECK(error_parameter(Command::bath, R"({"model": {"kind": "tm_bath", "bath": {"k_max": 0}}})") == "model.bath.k_max");
  CHECK(error_parameter(Command::bath, R"({"model": {}})") == "model.kind");
  CHECK(error_parameter(Command::bath, R"({"model": {"kind": "tm3"}})") == "model.kind");
  CHECK(error_parameter(Command::tm3, R"({"model": {"kind": "te3"}})") == "model.kind");
  CHECK(error_parameter(Command::tm3, R"({"model": {"a1": "one"}})") == "model.a1");
  CHECK(error_parameter(Command::tm3, R"({"model": {"a3": 0}})") == "model.a3");
  CHECK(error_parameter(Command::bath, R"({"model": {"kind": "tm_bath", "mediators": [{"a": 1, "c": 0.1}, {"a": -1}]}})") ==
        "model.mediators[1].a");
  CHECK(error_parameter(Command::bath, R"({"model": {"kind": "tm_bath", "mediators": []}})") == "model.mediators");
  CHECK(error_parameter(Command::dipole, R"({"model": {"g1": -0.1}})") == "model.g1");
  CHECK(error_parameter(Command::dipole, R"({"model": {"r": 0}})") == "model.r");
  CHECK(error_parameter(Command::dipole, R"({"sweep": {"r_min": 1, "T_max": 3}})") == "sweep");
  CHECK(error_parameter(Command::tm3, R"({"sweep": {"r_min": 1}})") == "sweep.r_min");
  CHECK(error_parameter(Command::tm3, R"({"output": {"format": "xml"}})") == "output.format");
  CHECK(error_parameter(Command::tm3, R"({"tolerance": {"rel_tol": 0.1}})") == "tolerance.rel_tol");
  CHECK(error_parameter(Command::tm3, R"({"tolerance": {"n_max_cap": 0}})") == "tolerance.n_max_cap");
  CHECK(error_parameter(Command::tm3, "[1, 2]") == "config");
  CHECK(error_parameter(Command::tm3, "{not json") == "config");
  CHECK(error_parameter(Command::tm3, R"({"model": 3})") == "model");
}

TEST_CASE("unknown keys are rejected") {
  CHECK(error_parameter(Command::tm3, R"({"modle": {}})") == "modle");
  CHECK(error_parameter(Command::tm3, R"({"model": {"c": 0.1, "d": 2}})") == "model.d");
  CHECK(error_parameter(Command::tm3, R"({"model": {"bath": {"N": 3}}})") == "model.bath");
  CHECK(error_parameter(Command::bath, R"({"model": {"kind": "te_bath", "bath": {"M": 3}}})") == "model.bath.M");
  CHECK(error_parameter(Command::dipole, R"({"model": {"c": 1}})") == "model.c");
  CHECK(error_parameter(Command::verify, R"({"model": {}})") == "model");
  CHECK(error_parameter(Command::tm3, R"({"sweep": {"T": 1}})") == "sweep.r_min");
}

TEST_CASE("round trip through emit") {
  std::vector<RunConfig> configs;
  for (auto c : {Command::tm3, Command::te3, Command::bath, Command::dipole, Command::verify}) {
    configs.push_back(default_config(c));
  }
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 50; ++i) {
    RunConfig cfg = default_config(i % 2 ? Command::te3 : Command::bath);
    cfg.model.a1 = u(rng);
    cfg.model.a2 = u(rng) / 3.0;
    if (cfg.command == Command::bath) {
      cfg.model.kind = ModelKind::te_bath;
      if (i % 4 == 0) {
        cfg.bath.reset();
        cfg.model.mediators = {{u(rng), u(rng) - 1.5}, {u(rng), 1e-17 * u(rng)}};
      } else {
        cfg.bath = BathGrid{1 + i, u(rng), u(rng)};
        cfg.model.mediators = generate_bath(*cfg.bath);
      }
    } else {
      cfg.model.mediators[0] = {u(rng), u(rng) - 1.5};
    }
    cfg.sweep = {SweepConfig::Variable::T, u(rng), 3.0 + u(rng), 1 + i, i % 3 ? Spacing::log : Spacing::linear, 1e-4};
    cfg.output = {i % 2 ? Format::json : Format::csv, i % 5 ? "" : "out.csv"};
    cfg.tolerance = {1e-11 * u(rng), 1000 + i, 1e-4 * u(rng)};
    configs.push_back(cfg);

    RunConfig d = default_config(Command::dipole);
    d.dipole = {u(rng), 0.0, u(rng), u(rng), u(rng)};
    if (i % 2) d.sweep = {SweepConfig::Variable::T, 0.1, 0.1 + u(rng), 3, Spacing::linear, 1e-4};
    else d.sweep.temperature = u(rng);
    configs.push_back(d);
  }
  for (const auto& cfg : configs) {
    const std::string text = emit_config(cfg);
    const RunConfig back = parse_config(cfg.command, text);
    CHECK(back == cfg);
    CHECK(emit_config(back) == text);
  }
}

TEST_CASE("scalar overrides") {
  const std::vector<std::string> sets{"model.c=0.1", "sweep.points=3", "output.format=json", "sweep.spacing=\"linear\""};
  const auto cfg = parse_config(Command::tm3, apply_overrides(R"({"model": {"c": 0.3}})", sets));
  CHECK(cfg.model.mediators[0].c == 0.1);
  CHECK(cfg.sweep.points == 3);
  CHECK(cfg.sweep.spacing == Spacing::linear);
  CHECK(cfg.output.format == Format::json);

  // Overrides go through the same schema.
  const std::vector<std::string> bad_key{"model.q=1"};
  CHECK(error_parameter(Command::tm3, apply_overrides("{}", bad_key)) == "model.q");
  const std::vector<std::string> bad_value{"sweep.T_min=-3"};
  CHECK(error_parameter(Command::tm3, apply_overrides("{}", bad_value)) == "sweep.T_min");

  const std::vector<std::string> malformed{"model.c"};
  CHECK_THROWS_AS(apply_overrides("{}", malformed), Error);
  const std::vector<std::string> structured{"model={\"c\":1}"};
  CHECK_THROWS_AS(apply_overrides("{}", structured), Error);
  const std::vector<std::string> through_scalar{"model.c.x=1"};
  CHECK_THROWS_AS(apply_overrides(R"({"model": {"c": 0.3}})", through_scalar), Error);
}

TEST_CASE("subcommand names") {
  CHECK(parse_command("bath") == Command::bath);
  CHECK(to_string(Command::verify) == "verify");
  CHECK_THROWS_AS(parse_command("te4"), Error);
}
