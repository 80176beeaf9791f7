#include "gradflow/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "gradflow/errors.hpp"
#include "gradflow/snapshot.hpp"

namespace gradflow {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string, std::less<>> kKnownKeys = {
    "grid.nx",          "grid.ny",         "grid.lx",           "grid.ly",
    "grid.dealias",     "energy.kind",     "energy.c",          "energy.sigma0",
    "energy.beta",      "energy.chi",      "mobility.m_x",      "mobility.m_psi",
    "model.variant",    "stepper.dt",      "stepper.scheme",    "stepper.stab_h",
    "stepper.stab_psi", "run.t_end",       "run.record_every",  "run.snapshot_times",
    "run.output_dir",   "run.seed",        "initial.h",         "initial.h_amplitude",
    "initial.psi"};

class Document {
 public:
  explicit Document(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
      const auto nl = text.find('\n');
      auto line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("line " + std::to_string(line_no), "expected `key = value`");
      const std::string key(trim(line.substr(0, eq)));
      if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown key");
      if (values_.contains(key)) throw ConfigError(key, "duplicate key");
      values_[key] = std::string(trim(line.substr(eq + 1)));
    }
  }

  bool has(const std::string& key) const { return values_.contains(key); }

  const std::string& raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "missing required key");
    used_.insert(key);
    return it->second;
  }

  double real(const std::string& key) const { return parse_real(key, raw(key)); }
  double real(const std::string& key, double fallback) const {
    return has(key) ? real(key) : fallback;
  }

  long long integer(const std::string& key) const {
    const auto& s = raw(key);
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw ConfigError(key, "expected an integer");
    return v;
  }
  long long integer(const std::string& key, long long fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& s = raw(key);
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError(key, "expected true or false");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
  }

  /// Keys that were set but never consumed by the selected options.
  void reject_unused() const {
    for (const auto& [key, value] : values_)
      if (!used_.contains(key)) throw ConfigError(key, "not applicable to the selected options");
  }

  static double parse_real(const std::string& key, std::string_view s) {
    double scale = 1.0;
    if (s.ends_with("pi")) {
      scale = std::numbers::pi;
      s.remove_suffix(2);
      if (s.empty()) return scale;
    }
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v))
      throw ConfigError(key, "expected a real number");
    return v * scale;
  }

 private:
  std::map<std::string, std::string, std::less<>> values_;
  mutable std::set<std::string, std::less<>> used_;
};

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<double> parse_stab(const Document& doc, const std::string& key) {
  if (!doc.has(key)) return std::nullopt;
  const auto& s = doc.raw(key);
  if (s == "auto") return std::nullopt;
  const double v = Document::parse_real(key, s);
  if (v < 0.0) throw ConfigError(key, "must be >= 0 or auto");
  return v == 0.0 ? std::nullopt : std::optional<double>(v);
}

template <typename Fn>
auto guarded(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

EnergyModel parse_energy(const Document& doc) {
  const auto& kind = doc.raw("energy.kind");
  if (kind == "constant")
    return guarded("energy.c", [&] { return EnergyModel::constant(doc.real("energy.c", 1.0)); });
  if (kind == "linear")
    return guarded("energy.c", [&] { return EnergyModel::linear(doc.real("energy.c", 1.0)); });
  if (kind == "quadratic")
    return guarded("energy.c", [&] { return EnergyModel::quadratic(doc.real("energy.c", 1.0)); });
  if (kind == "flory_huggins") {
    const double s0 = doc.real("energy.sigma0");
    const double beta = doc.real("energy.beta");
    const double chi = doc.real("energy.chi", 0.0);
    if (!(s0 > 0.0)) throw ConfigError("energy.sigma0", "must be > 0");
    if (!(beta > 0.0)) throw ConfigError("energy.beta", "must be > 0");
    return EnergyModel::flory_huggins(s0, beta, chi);
  }
  throw ConfigError("energy.kind", "unknown energy kind '" + kind + "'");
}

ModelVariant parse_variant(const std::string& s) {
  if (s == "full_coupled") return ModelVariant::FullCoupled;
  if (s == "velocity_substituted") return ModelVariant::VelocitySubstituted;
  if (s == "normal_only") return ModelVariant::NormalOnly;
  if (s == "material_gauge_quadratic") return ModelVariant::MaterialGaugeQuadratic;
  throw ConfigError("model.variant", "unknown variant '" + s + "'");
}

std::vector<double> parse_list(const std::string& key, std::string_view s) {
  std::vector<double> out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(Document::parse_real(key, trim(s.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  const Document doc(text);
  RunConfig c;

  c.nx = static_cast<int>(doc.integer("grid.nx"));
  c.ny = static_cast<int>(doc.integer("grid.ny"));
  c.lx = doc.real("grid.lx", 2.0 * std::numbers::pi);
  c.ly = doc.real("grid.ly", 2.0 * std::numbers::pi);
  c.dealias = doc.boolean("grid.dealias", true);

  c.energy = parse_energy(doc);
  c.mobilities.m_x = doc.real("mobility.m_x");
  c.mobilities.m_psi = doc.real("mobility.m_psi");
  c.variant = parse_variant(doc.raw("model.variant"));

  c.stepper.dt = doc.real("stepper.dt");
  const auto scheme = doc.text("stepper.scheme", "imex1");
  if (scheme == "imex1") c.stepper.scheme = Scheme::IMEX1;
  else if (scheme == "explicit_euler") c.stepper.scheme = Scheme::ExplicitEuler;
  else throw ConfigError("stepper.scheme", "unknown scheme '" + scheme + "'");
  c.stepper.stab_h = parse_stab(doc, "stepper.stab_h");
  c.stepper.stab_psi = parse_stab(doc, "stepper.stab_psi");

  c.t_end = doc.real("run.t_end");
  const auto every = doc.integer("run.record_every", 100);
  if (every < 1 || every > 1'000'000'000) throw ConfigError("run.record_every", "must be >= 1");
  c.record_every = static_cast<int>(every);
  if (doc.has("run.snapshot_times"))
    c.snapshot_times = parse_list("run.snapshot_times", doc.raw("run.snapshot_times"));
  c.output_dir = doc.text("run.output_dir", "out");
  c.seed = doc.integer("run.seed", 0);

  const auto h = doc.raw("initial.h");
  if (h == "zero") c.initial_h.kind = InitialHeight::Kind::Zero;
  else if (h == "sin2x_sin2y") c.initial_h.kind = InitialHeight::Kind::Sin2xSin2y;
  else if (h == "sin2x") c.initial_h.kind = InitialHeight::Kind::Sin2x;
  else if (h.starts_with("file:")) {
    c.initial_h.kind = InitialHeight::Kind::File;
    c.initial_h.path = h.substr(5);
  } else throw ConfigError("initial.h", "unknown initial height '" + h + "'");
  c.initial_h.amplitude = doc.real("initial.h_amplitude", 1.0);

  const auto psi = doc.raw("initial.psi");
  if (psi.starts_with("file:")) {
    c.initial_psi.kind = InitialDensity::Kind::File;
    c.initial_psi.path = psi.substr(5);
  } else {
    c.initial_psi.kind = InitialDensity::Kind::Constant;
    c.initial_psi.value = Document::parse_real("initial.psi", psi);
  }

  doc.reject_unused();
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  guarded("grid.nx", [&] { return Grid::make(c.nx, c.ny, c.lx, c.ly, c.dealias); });
  if (c.energy.kind() == EnergyModel::Kind::FloryHuggins &&
      c.initial_psi.kind == InitialDensity::Kind::Constant &&
      !(c.initial_psi.value > 0.0 && c.initial_psi.value < 1.0))
    throw ConfigError("initial.psi", "flory_huggins requires 0 < psi < 1");
  if (!(c.mobilities.m_x > 0.0)) throw ConfigError("mobility.m_x", "must be > 0");
  if (!(c.mobilities.m_psi > 0.0)) throw ConfigError("mobility.m_psi", "must be > 0");
  guarded("model.variant", [&] { validate_variant(c.variant, c.energy); return 0; });
  if (!(c.stepper.dt > 0.0)) throw ConfigError("stepper.dt", "must be > 0");
  if (!(c.t_end > 0.0)) throw ConfigError("run.t_end", "must be > 0");
  if (c.stepper.dt > c.t_end) throw ConfigError("stepper.dt", "must not exceed run.t_end");
  if (c.record_every < 1) throw ConfigError("run.record_every", "must be >= 1");
  for (double s : c.snapshot_times)
    if (s < 0.0 || s > c.t_end) throw ConfigError("run.snapshot_times", "times must lie in [0, t_end]");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string print_config(const RunConfig& c) {
  std::ostringstream out;
  auto line = [&](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  line("grid.nx", std::to_string(c.nx));
  line("grid.ny", std::to_string(c.ny));
  line("grid.lx", format_real(c.lx));
  line("grid.ly", format_real(c.ly));
  line("grid.dealias", c.dealias ? "true" : "false");
  line("energy.kind", std::string(to_string(c.energy.kind())));
  if (c.energy.kind() == EnergyModel::Kind::FloryHuggins) {
    line("energy.sigma0", format_real(c.energy.sigma0()));
    line("energy.beta", format_real(c.energy.beta()));
    line("energy.chi", format_real(c.energy.chi()));
  } else {
    line("energy.c", format_real(c.energy.c()));
  }
  line("mobility.m_x", format_real(c.mobilities.m_x));
  line("mobility.m_psi", format_real(c.mobilities.m_psi));
  line("model.variant", std::string(to_string(c.variant)));
  line("stepper.dt", format_real(c.stepper.dt));
  line("stepper.scheme", std::string(to_string(c.stepper.scheme)));
  line("stepper.stab_h", c.stepper.stab_h ? format_real(*c.stepper.stab_h) : "auto");
  line("stepper.stab_psi", c.stepper.stab_psi ? format_real(*c.stepper.stab_psi) : "auto");
  line("run.t_end", format_real(c.t_end));
  line("run.record_every", std::to_string(c.record_every));
  std::string times;
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i)
    times += (i ? "," : "") + format_real(c.snapshot_times[i]);
  line("run.snapshot_times", times);
  line("run.output_dir", c.output_dir);
  line("run.seed", std::to_string(c.seed));
  switch (c.initial_h.kind) {
    case InitialHeight::Kind::Zero: line("initial.h", "zero"); break;
    case InitialHeight::Kind::Sin2xSin2y: line("initial.h", "sin2x_sin2y"); break;
    case InitialHeight::Kind::Sin2x: line("initial.h", "sin2x"); break;
    case InitialHeight::Kind::File: line("initial.h", "file:" + c.initial_h.path); break;
  }
  line("initial.h_amplitude", format_real(c.initial_h.amplitude));
  line("initial.psi", c.initial_psi.kind == InitialDensity::Kind::File
                          ? "file:" + c.initial_psi.path
                          : format_real(c.initial_psi.value));
  return out.str();
}

GridPtr make_grid(const RunConfig& c) { return Grid::make(c.nx, c.ny, c.lx, c.ly, c.dealias); }

FlowState initial_state(const RunConfig& c, const GridPtr& grid) {
  FlowState s;
  const double a = c.initial_h.amplitude;
  switch (c.initial_h.kind) {
    case InitialHeight::Kind::Zero:
      s.h = ScalarField(grid, 0.0);
      break;
    case InitialHeight::Kind::Sin2xSin2y:
      s.h = ScalarField::sample(grid, [a](double x, double y) {
        return a * std::sin(2.0 * x) * std::sin(2.0 * y);
      });
      break;
    case InitialHeight::Kind::Sin2x:
      s.h = ScalarField::sample(grid, [a](double x, double) { return a * std::sin(2.0 * x); });
      break;
    case InitialHeight::Kind::File:
      s.h = read_snapshot(c.initial_h.path, grid).h;
      break;
  }
  if (c.initial_psi.kind == InitialDensity::Kind::Constant)
    s.psi = ScalarField(grid, c.initial_psi.value);
  else
    s.psi = read_snapshot(c.initial_psi.path, grid).psi;
  return s;
}

}  // namespace gradflow
