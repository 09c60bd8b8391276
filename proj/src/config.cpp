#include "rydhet/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rydhet/errors.hpp"

namespace rydhet {

using nlohmann::json;

namespace {

template <class E>
struct EnumName {
  E value;
  const char* name;
};

constexpr EnumName<DetuningAxis> kAxes[] = {
    {DetuningAxis::LocalMicrowave, "delta_l"},
    {DetuningAxis::ProbeLaser, "delta_p"},
    {DetuningAxis::CouplingLaser, "delta_c"},
    {DetuningAxis::TransitRate, "gamma_t"},
};
constexpr EnumName<DetectionMode> kModes[] = {
    {DetectionMode::GeneralCase, "general"},
    {DetectionMode::HighTransmittance, "high_transmittance"},
};
constexpr EnumName<ChiSign> kSigns[] = {
    {ChiSign::Physical, "physical"},
    {ChiSign::Conjugate, "conjugate"},
};
constexpr EnumName<SweepMethod> kMethods[] = {
    {SweepMethod::Auto, "auto"},
    {SweepMethod::ClosedForm, "closed_form"},
    {SweepMethod::Numeric, "numeric"},
};
constexpr EnumName<OutputFormat> kFormats[] = {
    {OutputFormat::Csv, "csv"},
    {OutputFormat::Json, "json"},
};

template <class E, std::size_t N>
const char* name_of(const EnumName<E> (&table)[N], E v) {
  for (const auto& e : table)
    if (e.value == v) return e.name;
  return "?";
}

// Reads one JSON object, tracking which keys were consumed so leftovers can
// be reported.
class Reader {
public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected object");
  }

  void number(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) throw ConfigError(at(key), "expected number");
      out = v->get<double>();
    }
  }

  void integer(const char* key, int& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) throw ConfigError(at(key), "expected integer");
      out = v->get<int>();
    }
  }

  void string(const char* key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) throw ConfigError(at(key), "expected string");
      out = v->get<std::string>();
    }
  }

  void numbers(const char* key, std::vector<double>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array()) throw ConfigError(at(key), "expected array of numbers");
      out.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        if (!(*v)[i].is_number())
          throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected number");
        out.push_back((*v)[i].get<double>());
      }
    }
  }

  template <class E, std::size_t N>
  void enumeration(const char* key, const EnumName<E> (&table)[N], E& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_string()) throw ConfigError(at(key), "expected string");
    const std::string s = v->get<std::string>();
    for (const auto& e : table)
      if (s == e.name) {
        out = e.value;
        return;
      }
    std::string allowed;
    for (const auto& e : table) allowed += std::string(allowed.empty() ? "" : ", ") + e.name;
    throw ConfigError(at(key), "unknown value \"" + s + "\" (expected one of " + allowed + ")");
  }

  Reader child(const char* key) {
    static const json empty = json::object();
    const json* v = take(key);
    return Reader(v ? *v : empty, at(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(at(it.key()), "unknown field");
  }

private:
  const json* take(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  std::string at(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json to_json(const RunConfig& c) {
  json j;
  const auto& a = c.atom;
  j["atom"] = {
      {"gamma2_mhz", a.gamma2_mhz},       {"gamma3_mhz", a.gamma3_mhz},
      {"gamma4_mhz", a.gamma4_mhz},       {"gamma_c_mhz", a.gamma_c_mhz},
      {"gamma_t_mhz", a.gamma_t_mhz},     {"mu12_cm", a.mu12_cm},
      {"n_eff_per_cm3", a.n_eff_per_cm3}, {"lambda_p_nm", a.lambda_p_nm},
      {"cell_length_cm", a.cell_length_cm}, {"mass_kg", a.mass_kg},
      {"temperature_k", a.temperature_k},
  };
  const auto& d = c.drive;
  j["drive"] = {
      {"omega_p_mhz", d.omega_p_mhz}, {"omega_c_mhz", d.omega_c_mhz},
      {"omega_l_mhz", d.omega_l_mhz}, {"omega_s_mhz", d.omega_s_mhz},
      {"delta_p_mhz", d.delta_p_mhz}, {"delta_c_mhz", d.delta_c_mhz},
      {"delta_l_mhz", d.delta_l_mhz}, {"beat_hz", d.beat_hz},
      {"phi_s_rad", d.phi_s_rad},
  };
  j["readout"] = {
      {"input_power_w", c.readout.input_power_w},
      {"mode", name_of(kModes, c.readout.mode)},
      {"chi_sign", name_of(kSigns, c.readout.chi_sign)},
  };
  const auto& s = c.sweep;
  j["sweep"] = {
      {"axis", name_of(kAxes, s.axis)},
      {"lo_mhz", s.lo_mhz},
      {"hi_mhz", s.hi_mhz},
      {"n", s.n},
      {"method", name_of(kMethods, s.method)},
      {"extraction_omega_s_mhz", s.extraction_omega_s_mhz},
      {"phase_samples", s.phase_samples},
  };
  const auto& o = c.optimize;
  j["optimize"] = {
      {"window_lo_mhz", o.window_lo_mhz},
      {"window_hi_mhz", o.window_hi_mhz},
      {"coarse_n", o.coarse_n},
      {"refine_iters", o.refine_iters},
      {"crosscheck_rel_tol", o.crosscheck_rel_tol},
      {"gamma_values_mhz", o.gamma_values_mhz},
      {"extraction_omega_s_mhz", o.extraction_omega_s_mhz},
  };
  j["output"] = {{"format", name_of(kFormats, c.output.format)}, {"path", c.output.path}};
  return j;
}

const std::map<std::string, std::string> kAtomFieldPath = {
    {"gamma2", "atom.gamma2_mhz"},       {"gamma3", "atom.gamma3_mhz"},
    {"gamma4", "atom.gamma4_mhz"},       {"gamma_c", "atom.gamma_c_mhz"},
    {"gamma_t", "atom.gamma_t_mhz"},     {"mu12", "atom.mu12_cm"},
    {"n_eff", "atom.n_eff_per_cm3"},     {"lambda_p", "atom.lambda_p_nm"},
    {"cell_length", "atom.cell_length_cm"}, {"mass", "atom.mass_kg"},
    {"temperature", "atom.temperature_k"},
};
const std::map<std::string, std::string> kDriveFieldPath = {
    {"omega_p", "drive.omega_p_mhz"}, {"omega_c", "drive.omega_c_mhz"},
    {"omega_L", "drive.omega_l_mhz"}, {"omega_s", "drive.omega_s_mhz"},
    {"delta_p", "drive.delta_p_mhz"}, {"delta_c", "drive.delta_c_mhz"},
    {"delta_L", "drive.delta_l_mhz"}, {"delta_beat", "drive.beat_hz"},
    {"phi_s", "drive.phi_s_rad"},
};

template <class F>
auto rethrow_as_config(const std::map<std::string, std::string>& paths, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    auto it = paths.find(e.field());
    throw ConfigError(it == paths.end() ? e.field() : it->second, e.what());
  }
}

}  // namespace

std::vector<double> OptimizeSection::default_gamma_values_mhz() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(0.01 * i);
  return g;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  RunConfig c;
  Reader root(j, "");

  Reader a = root.child("atom");
  a.number("gamma2_mhz", c.atom.gamma2_mhz);
  a.number("gamma3_mhz", c.atom.gamma3_mhz);
  a.number("gamma4_mhz", c.atom.gamma4_mhz);
  a.number("gamma_c_mhz", c.atom.gamma_c_mhz);
  a.number("gamma_t_mhz", c.atom.gamma_t_mhz);
  a.number("mu12_cm", c.atom.mu12_cm);
  a.number("n_eff_per_cm3", c.atom.n_eff_per_cm3);
  a.number("lambda_p_nm", c.atom.lambda_p_nm);
  a.number("cell_length_cm", c.atom.cell_length_cm);
  a.number("mass_kg", c.atom.mass_kg);
  a.number("temperature_k", c.atom.temperature_k);
  a.finish();

  Reader d = root.child("drive");
  d.number("omega_p_mhz", c.drive.omega_p_mhz);
  d.number("omega_c_mhz", c.drive.omega_c_mhz);
  d.number("omega_l_mhz", c.drive.omega_l_mhz);
  d.number("omega_s_mhz", c.drive.omega_s_mhz);
  d.number("delta_p_mhz", c.drive.delta_p_mhz);
  d.number("delta_c_mhz", c.drive.delta_c_mhz);
  d.number("delta_l_mhz", c.drive.delta_l_mhz);
  d.number("beat_hz", c.drive.beat_hz);
  d.number("phi_s_rad", c.drive.phi_s_rad);
  d.finish();

  Reader r = root.child("readout");
  r.number("input_power_w", c.readout.input_power_w);
  r.enumeration("mode", kModes, c.readout.mode);
  r.enumeration("chi_sign", kSigns, c.readout.chi_sign);
  r.finish();

  Reader s = root.child("sweep");
  s.enumeration("axis", kAxes, c.sweep.axis);
  s.number("lo_mhz", c.sweep.lo_mhz);
  s.number("hi_mhz", c.sweep.hi_mhz);
  s.integer("n", c.sweep.n);
  s.enumeration("method", kMethods, c.sweep.method);
  s.number("extraction_omega_s_mhz", c.sweep.extraction_omega_s_mhz);
  s.integer("phase_samples", c.sweep.phase_samples);
  s.finish();

  Reader o = root.child("optimize");
  o.number("window_lo_mhz", c.optimize.window_lo_mhz);
  o.number("window_hi_mhz", c.optimize.window_hi_mhz);
  o.integer("coarse_n", c.optimize.coarse_n);
  o.integer("refine_iters", c.optimize.refine_iters);
  o.number("crosscheck_rel_tol", c.optimize.crosscheck_rel_tol);
  o.numbers("gamma_values_mhz", c.optimize.gamma_values_mhz);
  o.number("extraction_omega_s_mhz", c.optimize.extraction_omega_s_mhz);
  o.finish();

  Reader out = root.child("output");
  out.enumeration("format", kFormats, c.output.format);
  out.string("path", c.output.path);
  out.finish();

  root.finish();

  if (c.sweep.n < 1) throw ConfigError("sweep.n", "must be >= 1");
  if (c.sweep.n > 1 && !(c.sweep.hi_mhz > c.sweep.lo_mhz))
    throw ConfigError("sweep.hi_mhz", "must exceed sweep.lo_mhz");
  if (c.sweep.axis == DetuningAxis::TransitRate && c.sweep.lo_mhz < 0)
    throw ConfigError("sweep.lo_mhz", "transit rate must be >= 0");
  if (c.sweep.axis == DetuningAxis::TransitRate && c.sweep.method == SweepMethod::ClosedForm)
    throw ConfigError("sweep.method", "no closed form exists for the gamma_t axis");
  if (c.sweep.phase_samples < 4) throw ConfigError("sweep.phase_samples", "must be >= 4");
  if (!(c.sweep.extraction_omega_s_mhz > 0))
    throw ConfigError("sweep.extraction_omega_s_mhz", "must be > 0");
  if (!(c.optimize.window_hi_mhz > c.optimize.window_lo_mhz))
    throw ConfigError("optimize.window_hi_mhz", "must exceed optimize.window_lo_mhz");
  if (c.optimize.coarse_n < 3) throw ConfigError("optimize.coarse_n", "must be >= 3");
  if (c.optimize.refine_iters < 0) throw ConfigError("optimize.refine_iters", "must be >= 0");
  if (!(c.optimize.crosscheck_rel_tol >= 0))
    throw ConfigError("optimize.crosscheck_rel_tol", "must be >= 0");
  if (c.optimize.gamma_values_mhz.empty())
    throw ConfigError("optimize.gamma_values_mhz", "must not be empty");
  for (std::size_t i = 0; i < c.optimize.gamma_values_mhz.size(); ++i) {
    const double g = c.optimize.gamma_values_mhz[i];
    if (g < 0 || (i > 0 && !(g > c.optimize.gamma_values_mhz[i - 1])))
      throw ConfigError("optimize.gamma_values_mhz[" + std::to_string(i) + "]",
                        "values must be >= 0 and strictly ascending");
  }
  if (!(c.optimize.extraction_omega_s_mhz > 0))
    throw ConfigError("optimize.extraction_omega_s_mhz", "must be > 0");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c, int indent) {
  return to_json(c).dump(indent);
}

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : serialize_config(c, -1)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResolvedConfig resolve(const RunConfig& c) {
  AtomSystem atom = rethrow_as_config(kAtomFieldPath, [&] {
    AtomParams p;
    p.gamma2 = mhz_to_rad_s(c.atom.gamma2_mhz);
    p.gamma3 = mhz_to_rad_s(c.atom.gamma3_mhz);
    p.gamma4 = mhz_to_rad_s(c.atom.gamma4_mhz);
    p.gamma_c = mhz_to_rad_s(c.atom.gamma_c_mhz);
    p.gamma_t = mhz_to_rad_s(c.atom.gamma_t_mhz);
    p.mu12 = c.atom.mu12_cm;
    p.n_eff = c.atom.n_eff_per_cm3 * 1e6;
    p.lambda_p = c.atom.lambda_p_nm * 1e-9;
    p.cell_length = c.atom.cell_length_cm * 1e-2;
    p.mass = c.atom.mass_kg;
    p.temperature = c.atom.temperature_k;
    return AtomSystem(p);
  });
  DriveConfig drive = rethrow_as_config(kDriveFieldPath, [&] {
    DriveParams p;
    p.omega_p = mhz_to_rad_s(c.drive.omega_p_mhz);
    p.omega_c = mhz_to_rad_s(c.drive.omega_c_mhz);
    p.omega_L = mhz_to_rad_s(c.drive.omega_l_mhz);
    p.omega_s = mhz_to_rad_s(c.drive.omega_s_mhz);
    p.delta_p = mhz_to_rad_s(c.drive.delta_p_mhz);
    p.delta_c = mhz_to_rad_s(c.drive.delta_c_mhz);
    p.delta_L = mhz_to_rad_s(c.drive.delta_l_mhz);
    p.delta_beat = c.drive.beat_hz;
    p.phi_s = c.drive.phi_s_rad;
    return DriveConfig(p);
  });
  ReadoutConfig readout;
  readout.input_power = c.readout.input_power_w;
  readout.detection_mode = c.readout.mode;
  readout.chi_sign = c.readout.chi_sign;
  rethrow_as_config({{"input_power", "readout.input_power_w"}}, [&] {
    readout.validate();
    return 0;
  });

  OptimizeOptions o;
  o.window_lo = mhz_to_rad_s(c.optimize.window_lo_mhz);
  o.window_hi = mhz_to_rad_s(c.optimize.window_hi_mhz);
  o.coarse_n = c.optimize.coarse_n;
  o.refine_iters = c.optimize.refine_iters;
  o.crosscheck_rel_tol = c.optimize.crosscheck_rel_tol;
  o.gamma_values.clear();
  for (double g : c.optimize.gamma_values_mhz) o.gamma_values.push_back(mhz_to_rad_s(g));
  o.extraction_omega_s = mhz_to_rad_s(c.optimize.extraction_omega_s_mhz);
  return {std::move(atom), std::move(drive), readout, std::move(o)};
}

const char* to_string(SweepMethod m) { return name_of(kMethods, m); }
const char* to_string(OutputFormat f) { return name_of(kFormats, f); }
const char* to_string(DetectionMode m) { return name_of(kModes, m); }
const char* to_string(ChiSign s) { return name_of(kSigns, s); }

}  // namespace rydhet
