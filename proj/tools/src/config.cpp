#include "casimir/cli/config.hpp"

#include <cmath>
#include <set>
#include <string>

#include "json.hpp"

#include "casimir/error.hpp"

namespace casimir::cli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::config, path + ": " + message, path);
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

// Reads the keys of one JSON object and rejects whatever was not asked for.
class ObjectReader {
 public:
  ObjectReader(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) fail(path_.empty() ? "config" : path_, "expected an object");
  }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    const auto it = value_.find(std::string(key));
    return it == value_.end() ? nullptr : &*it;
  }

  bool has(std::string_view key) const { return value_.contains(std::string(key)); }

  double number(std::string_view key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(join(path_, key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(join(path_, key), "must be finite");
    return x;
  }

  double positive(std::string_view key, double fallback) {
    const double x = number(key, fallback);
    if (!(x > 0.0)) fail(join(path_, key), "must be > 0");
    return x;
  }

  std::int64_t integer(std::string_view key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(join(path_, key), "expected an integer");
    const double x = v->get<double>();
    if (x != std::floor(x)) fail(join(path_, key), "expected an integer");
    if (x < double(lo) || x > double(hi)) {
      fail(join(path_, key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<std::int64_t>(x);
  }

  std::optional<std::string> string(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(join(path_, key), "expected a string");
    return v->get<std::string>();
  }

  const std::string& path() const { return path_; }

  void finish() const {
    for (const auto& [key, _] : value_.items()) {
      if (!seen_.contains(key)) fail(join(path_, key), "unknown key");
    }
  }

 private:
  const json& value_;
  std::string path_;
  std::set<std::string> seen_;
};

ModelKind model_kind(Command command, ObjectReader& r) {
  const auto text = r.string("kind");
  switch (command) {
    case Command::tm3:
    case Command::te3: {
      const ModelKind expected = command == Command::tm3 ? ModelKind::tm3 : ModelKind::te3;
      if (text && *text != to_string(expected)) {
        fail(join(r.path(), "kind"), "must be \"" + std::string(to_string(expected)) + "\" for this subcommand");
      }
      return expected;
    }
    case Command::bath: {
      if (!text) fail(join(r.path(), "kind"), "required: \"tm_bath\" or \"te_bath\"");
      if (*text != "tm_bath" && *text != "te_bath") fail(join(r.path(), "kind"), "must be \"tm_bath\" or \"te_bath\"");
      return parse_model_kind(*text);
    }
    default:
      break;
  }
  fail(join(r.path(), "kind"), "not used by this subcommand");
}

void read_oscillators(RunConfig& cfg, const json& value) {
  ObjectReader r(value, "model");
  cfg.model.kind = model_kind(cfg.command, r);
  cfg.model.a1 = r.positive("a1", cfg.model.a1);
  cfg.model.a2 = r.positive("a2", cfg.model.a2);

  if (cfg.command != Command::bath) {
    cfg.model.mediators = {{r.positive("a3", cfg.model.mediators[0].a), r.number("c", cfg.model.mediators[0].c)}};
    r.finish();
    return;
  }

  if (r.has("bath") && r.has("mediators")) fail("model", "give either \"bath\" or \"mediators\", not both");
  if (const json* list = r.find("mediators")) {
    if (!list->is_array() || list->empty()) fail("model.mediators", "expected a non-empty array");
    cfg.bath.reset();
    cfg.model.mediators.clear();
    for (std::size_t i = 0; i < list->size(); ++i) {
      ObjectReader m((*list)[i], "model.mediators[" + std::to_string(i) + "]");
      const double a = m.positive("a", 1.0);
      const double c = m.number("c", 0.0);
      m.finish();
      cfg.model.mediators.push_back({a, c});
    }
  } else {
    BathGrid grid = cfg.bath.value_or(BathGrid{});
    if (const json* b = r.find("bath")) {
      ObjectReader g(*b, "model.bath");
      grid.modes = int(g.integer("N", grid.modes, 1, 100000));
      grid.k_max = g.positive("k_max", grid.k_max);
      grid.lambda = g.number("lambda", grid.lambda);
      g.finish();
    }
    cfg.bath = grid;
    cfg.model.mediators = generate_bath(grid);
  }
  r.finish();
}

void read_dipole(RunConfig& cfg, const json& value) {
  ObjectReader r(value, "model");
  auto& d = cfg.dipole;
  d.g1 = r.number("g1", d.g1);
  d.g2 = r.number("g2", d.g2);
  if (d.g1 < 0.0) fail("model.g1", "must be >= 0");
  if (d.g2 < 0.0) fail("model.g2", "must be >= 0");
  d.a1 = r.positive("a1", d.a1);
  d.a2 = r.positive("a2", d.a2);
  d.r = r.positive("r", d.r);
  r.finish();
}

Spacing read_spacing(ObjectReader& r, Spacing fallback) {
  const auto text = r.string("spacing");
  if (!text) return fallback;
  if (*text == "linear") return Spacing::linear;
  if (*text == "log") return Spacing::log;
  fail(join(r.path(), "spacing"), "must be \"linear\" or \"log\"");
}

void read_sweep(RunConfig& cfg, const json& value) {
  ObjectReader r(value, "sweep");
  auto& s = cfg.sweep;
  const bool distance = r.has("r_min") || r.has("r_max") || r.has("T");
  const bool thermal = r.has("T_min") || r.has("T_max");
  if (distance && thermal) fail("sweep", "mixes a temperature sweep (T_min, T_max) with a distance sweep (r_min, r_max, T)");
  if (distance && cfg.command != Command::dipole) fail("sweep.r_min", "distance sweeps need the dipole subcommand");

  if (thermal && s.variable != SweepConfig::Variable::T) s = SweepConfig{};
  if (distance && s.variable != SweepConfig::Variable::r) s = default_config(Command::dipole).sweep;

  const char* lo = s.variable == SweepConfig::Variable::T ? "T_min" : "r_min";
  const char* hi = s.variable == SweepConfig::Variable::T ? "T_max" : "r_max";
  s.min = r.positive(lo, s.min);
  s.max = r.positive(hi, s.max);
  if (s.max < s.min) fail(join("sweep", hi), std::string("must be >= ") + lo);
  s.points = int(r.integer("points", s.points, 1, 100000));
  s.spacing = read_spacing(r, s.spacing);
  if (s.variable == SweepConfig::Variable::r) s.temperature = r.positive("T", s.temperature);
  r.finish();
}

void read_output(RunConfig& cfg, const json& value) {
  ObjectReader r(value, "output");
  if (const auto f = r.string("format")) {
    if (*f == "csv") {
      cfg.output.format = Format::csv;
    } else if (*f == "json") {
      cfg.output.format = Format::json;
    } else {
      fail("output.format", "must be \"csv\" or \"json\"");
    }
  }
  if (const auto p = r.string("path")) cfg.output.path = *p;
  r.finish();
}

void read_tolerance(RunConfig& cfg, const json& value) {
  ObjectReader r(value, "tolerance");
  auto& t = cfg.tolerance;
  t.rel_tol = r.positive("rel_tol", t.rel_tol);
  if (t.rel_tol > 1e-3) fail("tolerance.rel_tol", "must lie in (0, 1e-3]");
  t.n_max_cap = r.integer("n_max_cap", t.n_max_cap, 1, std::int64_t(1) << 40);
  t.derivative_step = r.positive("derivative_step", t.derivative_step);
  if (t.derivative_step > 0.1) fail("tolerance.derivative_step", "must lie in (0, 0.1]");
  r.finish();
}

json spacing_json(Spacing s) { return s == Spacing::log ? "log" : "linear"; }

}  // namespace

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::tm3: return "tm3";
    case Command::te3: return "te3";
    case Command::bath: return "bath";
    case Command::dipole: return "dipole";
    case Command::verify: return "verify";
  }
  return "?";
}

Command parse_command(std::string_view text) {
  for (auto c : {Command::tm3, Command::te3, Command::bath, Command::dipole, Command::verify}) {
    if (to_string(c) == text) return c;
  }
  throw Error(ErrorKind::config, "unknown subcommand \"" + std::string(text) + "\"", "subcommand");
}

RunConfig default_config(Command command) {
  RunConfig cfg;
  cfg.command = command;
  switch (command) {
    case Command::tm3:
    case Command::te3:
      cfg.model = {command == Command::tm3 ? ModelKind::tm3 : ModelKind::te3, 1.0, 1.0, {{1.0, 0.3}}};
      break;
    case Command::bath:
      cfg.model = {ModelKind::tm_bath, 1.0, 1.0, {}};
      cfg.bath = BathGrid{};
      cfg.model.mediators = generate_bath(*cfg.bath);
      break;
    case Command::dipole:
      cfg.dipole = {0.1, 0.1, 1.0, 1.0, 10.0};
      cfg.sweep = {SweepConfig::Variable::r, 10.0, 100.0, 11, Spacing::log, 1e-4};
      break;
    case Command::verify:
      break;
  }
  return cfg;
}

RunConfig parse_config(Command command, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::config, std::string("malformed JSON: ") + e.what(), "config");
  }

  RunConfig cfg = default_config(command);
  ObjectReader top(doc, "");
  if (command != Command::verify) {
    if (const json* m = top.find("model")) {
      if (command == Command::dipole) {
        read_dipole(cfg, *m);
      } else {
        read_oscillators(cfg, *m);
      }
    }
    if (const json* s = top.find("sweep")) read_sweep(cfg, *s);
    if (const json* t = top.find("tolerance")) read_tolerance(cfg, *t);
  }
  if (const json* o = top.find("output")) read_output(cfg, *o);
  top.finish();
  return cfg;
}

std::string apply_overrides(std::string_view text, std::span<const std::string> assignments) {
  json doc;
  try {
    doc = text.empty() ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::config, std::string("malformed JSON: ") + e.what(), "config");
  }
  if (!doc.is_object()) fail("config", "expected an object");

  for (const auto& assignment : assignments) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::config, "override \"" + assignment + "\" is not key.path=value", "--set");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value;
    try {
      value = json::parse(raw);
    } catch (const json::parse_error&) {
      value = raw;
    }
    if (value.is_structured()) fail(path, "overrides take scalar values only");

    json* node = &doc;
    std::size_t start = 0;
    for (;;) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (key.empty()) throw Error(ErrorKind::config, "empty key in override path \"" + path + "\"", "--set");
      if (!node->is_object()) fail(path.substr(0, start ? start - 1 : 0), "is not an object");
      if (dot == std::string::npos) {
        (*node)[key] = value;
        break;
      }
      node = &(*node)[key];
      if (node->is_null()) *node = json::object();
      start = dot + 1;
    }
  }
  return doc.dump();
}

std::string emit_config(const RunConfig& cfg) {
  json doc = json::object();
  if (cfg.command != Command::verify) {
    json model = json::object();
    if (cfg.command == Command::dipole) {
      const auto& d = cfg.dipole;
      model = {{"g1", d.g1}, {"g2", d.g2}, {"a1", d.a1}, {"a2", d.a2}, {"r", d.r}};
    } else {
      model["kind"] = std::string(to_string(cfg.model.kind));
      model["a1"] = cfg.model.a1;
      model["a2"] = cfg.model.a2;
      if (cfg.command != Command::bath) {
        model["a3"] = cfg.model.mediators.at(0).a;
        model["c"] = cfg.model.mediators.at(0).c;
      } else if (cfg.bath) {
        model["bath"] = {{"N", cfg.bath->modes}, {"k_max", cfg.bath->k_max}, {"lambda", cfg.bath->lambda}};
      } else {
        json list = json::array();
        for (const auto& m : cfg.model.mediators) list.push_back({{"a", m.a}, {"c", m.c}});
        model["mediators"] = list;
      }
    }
    doc["model"] = model;

    const auto& s = cfg.sweep;
    if (s.variable == SweepConfig::Variable::T) {
      doc["sweep"] = {{"T_min", s.min}, {"T_max", s.max}, {"points", s.points}, {"spacing", spacing_json(s.spacing)}};
    } else {
      doc["sweep"] = {{"r_min", s.min}, {"r_max", s.max}, {"points", s.points},
                      {"spacing", spacing_json(s.spacing)}, {"T", s.temperature}};
    }
    doc["tolerance"] = {{"rel_tol", cfg.tolerance.rel_tol},
                        {"n_max_cap", cfg.tolerance.n_max_cap},
                        {"derivative_step", cfg.tolerance.derivative_step}};
  }
  json output = {{"format", cfg.output.format == Format::csv ? "csv" : "json"}};
  if (!cfg.output.path.empty()) output["path"] = cfg.output.path;
  doc["output"] = output;
  return doc.dump(2) + "\n";
}

}  // namespace casimir::cli
