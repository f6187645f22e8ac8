#include "casimir/cli/run.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "casimir/dipole.hpp"
#include "casimir/model.hpp"
#include "casimir/thermo.hpp"
#include "casimir/verify.hpp"

namespace casimir::cli {

using json = nlohmann::ordered_json;

namespace {

// Value rounded to 12 significant digits, so that JSON output carries the
// same digits as CSV.
double rounded(double value) {
  const std::string text = format_number(value);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

// Library errors name bare parameters; map them onto config key paths.
Error in_config(const Error& e, const RunConfig& cfg) {
  std::string param = e.parameter();
  if (param == "n_max_cap" || param == "rel_tol") {
    param = "tolerance." + param;
  } else if (param == "T" || param == "min" || param == "points") {
    param = "sweep";
  } else if (param.empty() || param == "mediators" || param == "r" || param == "g1" || param == "g2" ||
             param == "a1" || param == "a2") {
    if (e.kind() == ErrorKind::instability && cfg.command != Command::dipole) {
      param = cfg.command == Command::bath ? (cfg.bath ? "model.bath" : "model.mediators") : "model.c";
    } else if (cfg.command == Command::dipole && cfg.sweep.variable == SweepConfig::Variable::r &&
               (param.empty() || param == "r")) {
      param = "sweep.r_min";
    } else {
      param = param.empty() ? "model" : "model." + param;
    }
  }
  return e.with_parameter(param);
}

json model_block(const RunConfig& cfg) { return json::parse(emit_config(cfg))["model"]; }

std::string render_curve(const RunConfig& cfg, const ThermoCurve& curve) {
  if (cfg.output.format == Format::csv) {
    std::string out = "T,F,U,S\n";
    for (const auto& row : curve.rows) {
      out += format_number(row.T) + "," + format_number(row.F) + "," + format_number(row.U) + "," +
             format_number(row.S) + "\n";
    }
    return out;
  }
  json doc;
  doc["model"] = model_block(cfg);
  json rows = json::array();
  for (const auto& row : curve.rows) {
    rows.push_back({{"T", rounded(row.T)}, {"F", rounded(row.F)}, {"U", rounded(row.U)}, {"S", rounded(row.S)}});
  }
  doc["rows"] = rows;
  json intervals = json::array();
  for (const auto& iv : curve.negative_entropy_intervals) {
    intervals.push_back(json::array({rounded(iv.T_lo), rounded(iv.T_hi)}));
  }
  doc["negative_entropy_intervals"] = intervals;
  return doc.dump(2) + "\n";
}

std::string render_distance(const RunConfig& cfg, const std::vector<double>& rs, const std::vector<double>& fs) {
  if (cfg.output.format == Format::csv) {
    std::string out = "r,F\n";
    for (std::size_t i = 0; i < rs.size(); ++i) out += format_number(rs[i]) + "," + format_number(fs[i]) + "\n";
    return out;
  }
  json doc;
  doc["model"] = model_block(cfg);
  json rows = json::array();
  for (std::size_t i = 0; i < rs.size(); ++i) rows.push_back({{"r", rounded(rs[i])}, {"F", rounded(fs[i])}});
  doc["rows"] = rows;
  doc["negative_entropy_intervals"] = json::array();
  return doc.dump(2) + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

RunOutput run_verify(const RunConfig& cfg) {
  RunOutput result;
  json checks = json::array();
  std::string csv = "id,result,title,detail\n";
  for (const auto& check : verify::acceptance_checks()) {
    verify::CheckResult r;
    try {
      r = check.run();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    if (!r.passed && result.ok) {
      result.ok = false;
      result.failed = check.id;
    }
    csv += check.id + "," + (r.passed ? "PASS" : "FAIL") + "," + csv_field(check.title) + "," +
           csv_field(r.detail) + "\n";
    checks.push_back({{"id", check.id}, {"title", check.title}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (cfg.output.format == Format::csv) {
    result.text = csv;
  } else {
    result.text = json{{"checks", checks}, {"passed", result.ok}}.dump(2) + "\n";
  }
  return result;
}

RunOutput run_sweep(const RunConfig& cfg) {
  const auto& s = cfg.sweep;
  const auto grid = make_grid(s.min, s.max, s.points, s.spacing);

  if (cfg.command == Command::dipole) {
    check_dipole_pair(cfg.dipole);
    if (s.variable == SweepConfig::Variable::r) {
      std::vector<double> fs;
      for (double r : grid) {
        DipolePair pair = cfg.dipole;
        pair.r = r;
        try {
          fs.push_back(pair_free_energy(pair, s.temperature, cfg.tolerance));
        } catch (const Error& e) {
          std::ostringstream where;
          where << "at r=" << format_number(r);
          throw e.with_context(where.str());
        }
      }
      return {render_distance(cfg, grid, fs)};
    }
    const auto f = [&](double t) { return pair_free_energy(cfg.dipole, t, cfg.tolerance); };
    return {render_curve(cfg, sweep(f, grid, cfg.tolerance))};
  }

  const auto model = validate_stability(cfg.model);
  return {render_curve(cfg, sweep(model, grid, cfg.tolerance))};
}

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

RunOutput run(const RunConfig& cfg) {
  if (cfg.command == Command::verify) return run_verify(cfg);
  try {
    return run_sweep(cfg);
  } catch (const Error& e) {
    throw in_config(e, cfg);
  }
}

std::string error_record(std::string_view kind, std::string_view parameter, std::string_view message) {
  // dump() escapes control characters, so the record stays on one line
  return "{\"error\":" + json_string(kind) + ",\"parameter\":" + json_string(parameter) +
         ",\"message\":" + json_string(message) + "}";
}

std::string error_record(const Error& error) {
  return error_record(to_string(error.kind()), error.parameter(), error.message());
}

}  // namespace casimir::cli
