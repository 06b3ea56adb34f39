#include "qnls/io/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "qnls/errors.hpp"
#include "qnls/ground_state.hpp"
#include "qnls/io/checkpoint.hpp"

namespace qnls::io {

using nlohmann::json;

namespace {

// Reads the members of one JSON object and rejects anything left unread.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError("missing required field " + field(key));
    return j_.at(key);
  }

  Section section(const std::string& key) { return Section(raw(key), field(key)); }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(field(key) + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field(key) + " must be finite");
    return d;
  }

  double number(const std::string& key, double fallback) {
    seen_.insert(key);
    return has(key) ? number(key) : fallback;
  }

  std::optional<double> optional_number(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::size_t count(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(field(key) + " must be a non-negative integer");
    }
    return v.get<std::size_t>();
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    seen_.insert(key);
    return has(key) ? count(key) : fallback;
  }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(field(key) + " must be a string");
    return v.get<std::string>();
  }

  std::optional<std::string> optional_text(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    return text(key);
  }

  std::vector<double> numbers(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return {};
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(field(key) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(field(key) + " must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown field " + field(key));
    }
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

InitialData parse_initial(Section sec, const std::filesystem::path& base) {
  const std::string kind = sec.text("kind");
  InitialData out;
  if (kind == "soliton") {
    SolitonData d;
    d.lambda = sec.number("lambda", d.lambda);
    d.center = sec.number("center", d.center);
    d.amplitude = sec.number("amplitude", d.amplitude);
    if (!(d.lambda > 0.0)) throw ConfigError(sec.field("lambda") + " must be positive");
    out = d;
  } else if (kind == "gaussian") {
    GaussianData d;
    d.amplitude = sec.number("amplitude");
    d.width = sec.number("width");
    d.center = sec.number("center", d.center);
    d.chirp = sec.number("chirp", d.chirp);
    if (!(d.width > 0.0)) throw ConfigError(sec.field("width") + " must be positive");
    out = d;
  } else if (kind == "q_plus_ripple") {
    RippleData d;
    d.ripple_amp = sec.number("ripple_amp");
    d.ripple_freq = sec.number("ripple_freq");
    out = d;
  } else if (kind == "checkpoint") {
    out = CheckpointData{resolve(base, sec.text("path"))};
  } else {
    throw ConfigError(sec.field("kind") + " must be one of soliton, gaussian, q_plus_ripple, checkpoint (got '" +
                      kind + "')");
  }
  sec.finish();
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config syntax error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  RunConfig cfg;
  Section top(root, "");

  {
    Section grid = top.section("grid");
    cfg.n = grid.count("n");
    cfg.L = grid.number("L");
    grid.finish();
    if (!is_power_of_two(cfg.n) || cfg.n < 16) throw ConfigError("grid.n must be a power of two >= 16");
    if (!(cfg.L > 0.0)) throw ConfigError("grid.L must be positive");
  }

  cfg.initial_data = parse_initial(top.section("initial_data"), base_dir);

  if (auto sign = top.optional_text("sign")) cfg.solver.sign = parse_sign(*sign);

  if (top.has("solver")) {
    Section s = top.section("solver");
    SolverConfig& sc = cfg.solver;
    sc.dt_init = s.number("dt_init", sc.dt_init);
    sc.dt_min = s.number("dt_min", sc.dt_min);
    sc.accuracy_target = s.number("accuracy_target", sc.accuracy_target);
    sc.stop_gradnorm = s.optional_number("stop_gradnorm");
    sc.stop_gradnorm_factor = s.number("stop_gradnorm_factor", sc.stop_gradnorm_factor);
    sc.stop_time = s.number("stop_time", sc.stop_time);
    sc.dealias_fraction = s.number("dealias_fraction", sc.dealias_fraction);
    sc.tail_threshold = s.number("tail_threshold", sc.tail_threshold);
    s.finish();
  } else {
    top.optional_text("solver");
  }
  cfg.solver.validate();

  if (top.has("diagnostics")) {
    Section d = top.section("diagnostics");
    DiagnosticsConfig& dc = cfg.diagnostics;
    dc.s = d.number("s", dc.s);
    dc.N_list = d.numbers("N_list");
    if (auto g = d.optional_text("gamma_profile")) dc.gamma_profile = parse_gamma_profile(*g);
    dc.widths = d.numbers("widths");
    dc.stride = d.count("stride", dc.stride);
    d.finish();
    if (!(dc.s > 0.0 && dc.s < 1.0)) throw ConfigError("diagnostics.s must lie in (0, 1)");
    if (dc.stride == 0) throw ConfigError("diagnostics.stride must be positive");
    for (double N : dc.N_list) {
      if (!(N > 0.0)) throw ConfigError("diagnostics.N_list entries must be positive");
    }
    for (double w : dc.widths) {
      if (!(w > 0.0)) throw ConfigError("diagnostics.widths entries must be positive");
    }
  } else {
    top.optional_text("diagnostics");
  }

  if (top.has("output")) {
    Section o = top.section("output");
    if (auto p = o.optional_text("csv_path")) cfg.output.csv_path = resolve(base_dir, *p);
    if (auto p = o.optional_text("checkpoint_dir")) cfg.output.checkpoint_dir = resolve(base_dir, *p);
    cfg.output.checkpoint_stride = o.count("checkpoint_stride", 0);
    o.finish();
  } else {
    top.optional_text("output");
  }
  top.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::string to_json(const RunConfig& cfg) {
  json j;
  j["grid"] = {{"n", cfg.n}, {"L", cfg.L}};
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SolitonData>) {
          j["initial_data"] = {{"kind", "soliton"}, {"lambda", d.lambda}, {"center", d.center}, {"amplitude", d.amplitude}};
        } else if constexpr (std::is_same_v<T, GaussianData>) {
          j["initial_data"] = {{"kind", "gaussian"}, {"amplitude", d.amplitude}, {"width", d.width},
                               {"center", d.center}, {"chirp", d.chirp}};
        } else if constexpr (std::is_same_v<T, RippleData>) {
          j["initial_data"] = {{"kind", "q_plus_ripple"}, {"ripple_amp", d.ripple_amp}, {"ripple_freq", d.ripple_freq}};
        } else {
          j["initial_data"] = {{"kind", "checkpoint"}, {"path", d.path.string()}};
        }
      },
      cfg.initial_data);
  j["sign"] = std::string(to_string(cfg.solver.sign));
  const SolverConfig& s = cfg.solver;
  j["solver"] = {{"dt_init", s.dt_init},
                 {"dt_min", s.dt_min},
                 {"accuracy_target", s.accuracy_target},
                 {"stop_gradnorm_factor", s.stop_gradnorm_factor},
                 {"stop_time", s.stop_time},
                 {"dealias_fraction", s.dealias_fraction},
                 {"tail_threshold", s.tail_threshold}};
  if (s.stop_gradnorm) j["solver"]["stop_gradnorm"] = *s.stop_gradnorm;
  const DiagnosticsConfig& d = cfg.diagnostics;
  j["diagnostics"] = {{"s", d.s},
                      {"N_list", d.N_list},
                      {"gamma_profile", std::string(to_string(d.gamma_profile))},
                      {"widths", d.widths},
                      {"stride", d.stride}};
  json out = json::object();
  if (cfg.output.csv_path) out["csv_path"] = cfg.output.csv_path->string();
  if (cfg.output.checkpoint_dir) out["checkpoint_dir"] = cfg.output.checkpoint_dir->string();
  out["checkpoint_stride"] = cfg.output.checkpoint_stride;
  j["output"] = out;
  return j.dump(2);
}

Field make_initial_field(const RunConfig& cfg) {
  if (const auto* ck = std::get_if<CheckpointData>(&cfg.initial_data)) {
    Field f = load_checkpoint(ck->path);
    if (f.grid.size() != cfg.n || f.grid.length() != cfg.L) {
      throw ConfigError("checkpoint grid (n=" + std::to_string(f.grid.size()) + ") does not match grid in config");
    }
    return f;
  }
  const Grid g(cfg.n, cfg.L);
  Field f(g, 0.0);
  if (const auto* d = std::get_if<SolitonData>(&cfg.initial_data)) {
    f = sample_Q(g, d->center, d->lambda);
    for (auto& v : f.values) v *= d->amplitude;
  } else if (const auto* d = std::get_if<GaussianData>(&cfg.initial_data)) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double y = g.point(j) - d->center;
      f.values[j] = d->amplitude * std::exp(-(y / d->width) * (y / d->width)) * std::polar(1.0, d->chirp * y * y);
    }
  } else if (const auto* d = std::get_if<RippleData>(&cfg.initial_data)) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.point(j);
      f.values[j] = eval_Q(x) + d->ripple_amp * std::exp(-x * x) * std::polar(1.0, d->ripple_freq * x);
    }
  }
  return f;
}

}  // namespace qnls::io
