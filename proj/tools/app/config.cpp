#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <polaron/error.hpp>

namespace polaron::app {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

enum class Kind { real, integer, real_list, k_list, mode, format, text };

struct KeySpec {
  const char* key;
  Kind kind;
  const char* fallback;  // nullptr: no default
};

// clang-format off
constexpr KeySpec kSchema[] = {
    {"run.mode", Kind::mode, "spectrum"},
    {"run.format", Kind::format, "csv"},
    {"run.output", Kind::text, "."},
    {"run.k", Kind::k_list, "all"},
    {"run.max_sector_dim", Kind::integer, "100000"},
    {"model.t_e", Kind::real_list, nullptr},
    {"model.ratio", Kind::real_list, nullptr},
    {"model.g_h", Kind::real, nullptr},
    {"model.omega_delta", Kind::real, nullptr},
    {"model.n_sites", Kind::integer, "2"},
    {"model.max_phonons", Kind::integer, "0"},
    {"circuit.g", Kind::real, nullptr},
    {"circuit.delta", Kind::real, nullptr},
    {"circuit.xi_d", Kind::real, nullptr},
    {"circuit.omega_delta", Kind::real, nullptr},
    {"circuit.ej0", Kind::real, nullptr},
    {"circuit.zeta0_sq", Kind::real, nullptr},
    {"circuit.flux_ratio", Kind::real, nullptr},
    {"kpm.n_moments", Kind::integer, "4096"},
    {"kpm.epsilon", Kind::real, "0.01"},
    {"ramsey.source", Kind::integer, "0"},
    {"ramsey.bins", Kind::integer, "400"},
};
// clang-format on

const KeySpec* find_spec(std::string_view key) {
  for (const KeySpec& s : kSchema) {
    if (key == s.key) return &s;
  }
  return nullptr;
}

[[noreturn]] void reject(std::string_view key, const std::string& why) {
  throw ConfigError(std::string(key) + ": " + why);
}

double to_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    reject(key, "expected a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

long long to_integer(std::string_view key, std::string_view text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    reject(key, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

int to_int(std::string_view key, std::string_view text) {
  const long long v = to_integer(key, text);
  if (v < -1000000000LL || v > 1000000000LL) reject(key, "value out of range");
  return static_cast<int>(v);
}

std::vector<double> to_real_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (auto item : split_list(text)) out.push_back(to_real(key, item));
  return out;
}

Mode to_mode(std::string_view key, std::string_view text) {
  for (Mode m : {Mode::params, Mode::spectrum, Mode::oracle, Mode::ramsey, Mode::sweep}) {
    if (text == to_string(m)) return m;
  }
  reject(key, "unknown mode '" + std::string(text) +
                  "' (expected params, spectrum, oracle, ramsey or sweep)");
}

Format to_format(std::string_view key, std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  reject(key, "unknown format '" + std::string(text) + "' (expected csv or json)");
}

void check_syntax(std::string_view key, const KeySpec& spec, std::string_view value) {
  switch (spec.kind) {
    case Kind::real: to_real(key, value); break;
    case Kind::integer: to_integer(key, value); break;
    case Kind::real_list: to_real_list(key, value); break;
    case Kind::k_list:
      if (value != "all") {
        for (auto item : split_list(value)) to_int(key, item);
      }
      break;
    case Kind::mode: to_mode(key, value); break;
    case Kind::format: to_format(key, value); break;
    case Kind::text:
      if (value.empty()) reject(key, "must not be empty");
      break;
  }
}

void insert_unique(KeyValues& out, std::string key, std::string value, std::string_view origin) {
  if (out.count(key)) {
    throw ConfigError(std::string(origin) + ": duplicate key '" + key + "'");
  }
  out.emplace(std::move(key), std::move(value));
}

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  reject(key, "expected a scalar or an array of scalars");
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::params: return "params";
    case Mode::spectrum: return "spectrum";
    case Mode::oracle: return "oracle";
    case Mode::ramsey: return "ramsey";
    case Mode::sweep: return "sweep";
  }
  return "?";
}

std::string_view to_string(Format format) noexcept {
  return format == Format::csv ? "csv" : "json";
}

KeyValues parse_ini(std::string_view text, std::string_view origin) {
  KeyValues out;
  std::string section;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);

    for (std::size_t i = 0; i < line.size(); ++i) {
      const bool starts = i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t';
      if ((line[i] == '#' || line[i] == ';') && starts) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": missing key");
    if (section.empty()) {
      throw ConfigError(where + ": key '" + std::string(key) + "' appears before any [section]");
    }
    insert_unique(out, section + "." + std::string(key), std::string(trim(line.substr(eq + 1))),
                  where);
  }
  return out;
}

KeyValues parse_json(std::string_view text, std::string_view origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string(origin) + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("config") && doc.contains("library_version")) {
    doc = doc["config"];
  }
  if (!doc.is_object()) throw ConfigError(std::string(origin) + ": top level must be an object");

  KeyValues out;
  for (const auto& [section, body] : doc.items()) {
    if (!body.is_object()) {
      throw ConfigError(std::string(origin) + ": section '" + section + "' must be an object");
    }
    for (const auto& [name, value] : body.items()) {
      const std::string key = section + "." + name;
      std::string text_value;
      if (value.is_array()) {
        for (const auto& item : value) {
          if (!text_value.empty()) text_value += ", ";
          text_value += json_scalar(item, key);
        }
      } else {
        text_value = json_scalar(value, key);
      }
      insert_unique(out, key, std::move(text_value), origin);
    }
  }
  return out;
}

KeyValues load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = path.extension() == ".json" || (first != std::string::npos && text[first] == '{');
  return json ? parse_json(text, path.string()) : parse_ini(text, path.string());
}

void apply_override(KeyValues& base, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto key = trim(assignment.substr(0, eq));
  if (eq == std::string_view::npos || key.empty() || key.find('.') == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' must look like section.key=value");
  }
  base[std::string(key)] = std::string(trim(assignment.substr(eq + 1)));
}

RunConfig resolve(const KeyValues& values) {
  KeyValues v = values;
  for (const auto& [key, value] : v) {
    const KeySpec* spec = find_spec(key);
    if (!spec) reject(key, "unknown key");
    check_syntax(key, *spec, value);
  }
  for (const KeySpec& s : kSchema) {
    if (s.fallback && !v.count(s.key)) v.emplace(s.key, s.fallback);
  }
  const auto has = [&](const char* key) { return v.count(key) > 0; };
  const auto real = [&](const char* key) { return to_real(key, v.at(key)); };
  const auto integer = [&](const char* key) { return to_int(key, v.at(key)); };

  RunConfig c;
  c.mode = to_mode("run.mode", v.at("run.mode"));
  c.format = to_format("run.format", v.at("run.format"));
  c.output = v.at("run.output");
  const long long cap = to_integer("run.max_sector_dim", v.at("run.max_sector_dim"));
  if (cap < 0) reject("run.max_sector_dim", "must be >= 0");
  c.max_sector_dim = static_cast<Index>(cap);

  c.n_sites = integer("model.n_sites");
  if (c.n_sites < 2 || c.n_sites % 2 != 0) reject("model.n_sites", "must be even and >= 2");
  c.max_phonons = integer("model.max_phonons");
  if (c.max_phonons < 0) reject("model.max_phonons", "must be >= 0");
  c.n_moments = integer("kpm.n_moments");
  if (c.n_moments < 2 || c.n_moments % 2 != 0) reject("kpm.n_moments", "must be even and >= 2");
  c.epsilon = real("kpm.epsilon");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) reject("kpm.epsilon", "must lie in (0, 1)");

  if (v.at("run.k") != "all") {
    std::vector<int> ks;
    for (auto item : split_list(v.at("run.k"))) {
      const int k = to_int("run.k", item);
      if (k <= -c.n_sites / 2 || k > c.n_sites / 2) {
        reject("run.k", "index " + std::to_string(k) + " outside {-N/2+1, ..., N/2} for N=" +
                            std::to_string(c.n_sites));
      }
      ks.push_back(k);
    }
    c.k_list = std::move(ks);
  }

  c.ramsey_source = integer("ramsey.source");
  if (c.ramsey_source < 0 || c.ramsey_source >= c.n_sites) {
    reject("ramsey.source", "must be a site index in [0, model.n_sites)");
  }
  c.ramsey_bins = integer("ramsey.bins");
  if (c.ramsey_bins < 2) reject("ramsey.bins", "must be >= 2");

  // Circuit block: either absent or complete enough to give chi and g_H.
  const bool any_circuit = std::any_of(v.begin(), v.end(), [](const auto& kv) {
    return kv.first.rfind("circuit.", 0) == 0;
  });
  if (any_circuit) {
    CircuitParams cp;
    for (const char* key : {"circuit.g", "circuit.delta", "circuit.xi_d", "circuit.omega_delta"}) {
      if (!has(key)) reject(key, "required when a [circuit] block is given");
    }
    cp.g_over_2pi = real("circuit.g");
    cp.delta_over_2pi = real("circuit.delta");
    cp.xi_d_over_2pi = real("circuit.xi_d");
    cp.omega_delta_over_2pi = real("circuit.omega_delta");
    if (has("circuit.ej0")) cp.ej0 = real("circuit.ej0");
    if (has("circuit.zeta0_sq")) cp.zeta0_sq = real("circuit.zeta0_sq");
    if (has("circuit.flux_ratio")) cp.flux_ratio = real("circuit.flux_ratio");
    if (cp.ej0.has_value() != cp.flux_ratio.has_value()) {
      reject(cp.ej0 ? "circuit.flux_ratio" : "circuit.ej0",
             "circuit.ej0 and circuit.flux_ratio must be given together");
    }
    try {
      cp.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("circuit: ") + e.what());
    }
    c.circuit = cp;
  }

  if (has("model.omega_delta")) {
    c.omega_delta = real("model.omega_delta");
    if (c.circuit && c.omega_delta != c.circuit->omega_delta_over_2pi) {
      reject("model.omega_delta", "conflicts with circuit.omega_delta");
    }
  } else if (c.circuit) {
    c.omega_delta = c.circuit->omega_delta_over_2pi;
  } else {
    reject("model.omega_delta", "required (or give a [circuit] block)");
  }
  if (!(c.omega_delta > 0.0)) reject("model.omega_delta", "must be > 0");

  if (has("model.g_h")) {
    if (c.circuit) reject("model.g_h", "conflicts with the [circuit] block, which fixes g_H");
    c.g_h = real("model.g_h");
    if (c.g_h < 0.0) reject("model.g_h", "must be >= 0");
  } else if (c.circuit) {
    c.g_h = dimensionless_coupling(*c.circuit);
  } else {
    reject("model.g_h", "required (or give a [circuit] block)");
  }

  int sources = 0;
  if (has("model.t_e")) {
    c.t_e = to_real_list("model.t_e", v.at("model.t_e"));
    for (double t : c.t_e) {
      if (t < 0.0) reject("model.t_e", "hopping amplitudes must be >= 0");
    }
    ++sources;
  }
  if (has("model.ratio")) {
    c.ratios = to_real_list("model.ratio", v.at("model.ratio"));
    for (double r : c.ratios) {
      if (!(r > 0.0)) reject("model.ratio", "adiabaticity ratios must be > 0");
    }
    ++sources;
  }
  if (c.circuit && c.circuit->ej0) ++sources;
  if (sources > 1) {
    reject(has("model.ratio") ? "model.ratio" : "model.t_e",
           "give the hopping through exactly one of model.t_e, model.ratio or circuit.ej0");
  }
  if (sources == 0) {
    if (c.mode != Mode::sweep) reject("model.t_e", "required (or model.ratio, or circuit.ej0)");
    c.ratios = kDefaultSweepRatios;
    std::string text;
    for (double r : c.ratios) {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, r);
      text += (text.empty() ? "" : ", ") + std::string(buf, res.ptr);
    }
    v["model.ratio"] = text;
  }
  const std::size_t points = c.t_e.size() + c.ratios.size() + (c.circuit && c.circuit->ej0 ? 1 : 0);
  if (points != 1 && (c.mode == Mode::spectrum || c.mode == Mode::oracle || c.mode == Mode::ramsey)) {
    reject(has("model.ratio") ? "model.ratio" : "model.t_e",
           "mode " + std::string(to_string(c.mode)) + " takes exactly one hopping value");
  }

  c.resolved = std::move(v);
  return c;
}

std::vector<EffectiveParams> hopping_points(const RunConfig& c) {
  std::vector<EffectiveParams> out;
  const auto finish = [&](EffectiveParams p) {
    if (c.circuit) p.chi = stark_shift(*c.circuit);
    out.push_back(p);
  };
  for (double t : c.t_e) finish(make_effective(t, c.g_h, c.omega_delta, c.n_sites, c.max_phonons));
  for (double r : c.ratios) {
    finish(from_adiabaticity(r, c.omega_delta, c.g_h, c.n_sites, c.max_phonons));
  }
  if (c.circuit && c.circuit->ej0) out.push_back(from_circuit(*c.circuit, c.n_sites, c.max_phonons));
  return out;
}

std::vector<int> k_indices(const RunConfig& c) {
  if (c.k_list) return *c.k_list;
  std::vector<int> out;
  for (int k = -c.n_sites / 2 + 1; k <= c.n_sites / 2; ++k) out.push_back(k);
  return out;
}

}  // namespace polaron::app
