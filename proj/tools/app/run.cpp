#include "run.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include <polaron/error.hpp>
#include <polaron/kpm.hpp>
#include <polaron/oracle.hpp>
#include <polaron/parallel.hpp>
#include <polaron/ramsey.hpp>
#include <polaron/version.hpp>

#include "output.hpp"

namespace polaron::app {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json config_json(const KeyValues& values) {
  json out = json::object();
  for (const auto& [key, value] : values) {
    const auto dot = key.find('.');
    out[key.substr(0, dot)][key.substr(dot + 1)] = value;
  }
  return out;
}

json base_metadata(const RunConfig& c) {
  json m;
  m["mode"] = std::string(to_string(c.mode));
  m["library_version"] = std::string(version());
  m["threads"] = parallel::max_threads();
  m["config"] = config_json(c.resolved);
  return m;
}

json params_json(const EffectiveParams& p) {
  json j;
  j["t_e_hz"] = p.t_e;
  j["g_h"] = p.g_h;
  j["lambda_h"] = std::isfinite(p.lambda_h) ? json(p.lambda_h) : json("inf");
  j["omega_delta_hz"] = p.omega_delta;
  j["adiabaticity_ratio"] = std::isfinite(p.adiabaticity_ratio()) ? json(p.adiabaticity_ratio())
                                                                  : json("inf");
  j["n_sites"] = p.n_sites;
  j["max_phonons"] = p.max_phonons;
  if (p.chi) j["chi_hz"] = *p.chi;
  return j;
}

json sector_json(const SpectralResult& r) {
  const SpectralMetadata& m = r.metadata;
  json j;
  j["k_index"] = r.k_index;
  j["k_value"] = r.k_value;
  j["e_min"] = m.e_min;
  j["e_max"] = m.e_max;
  j["n_moments"] = m.n_moments;
  j["epsilon"] = m.epsilon;
  j["lanczos_iterations"] = m.lanczos_iterations;
  j["lanczos_residual"] = m.lanczos_residual;
  j["top_shell_weight"] = m.top_shell_weight;
  j["max_imag_residue"] = m.max_imag_residue;
  j["exact_delta"] = m.exact_delta;
  j["integrated_weight"] = r.integrated_weight();
  j["runtime_seconds"] = m.runtime_seconds;
  return j;
}

json units_json() {
  json u;
  u["energy"] = "hbar omega_delta";
  u["omega_hz"] = "linear frequency (Hz)";
  u["spectral_density"] = "per Hz; integrates to 1 over omega_hz";
  return u;
}

std::filesystem::path prepare_output(const RunConfig& c) {
  std::error_code ec;
  std::filesystem::create_directories(c.output, ec);
  if (ec) throw IoError("cannot create output directory '" + c.output.string() + "': " + ec.message());
  return c.output;
}

void check_capacity(const RunConfig& c, const PhononBasis& basis) {
  if (c.max_sector_dim > 0 && basis.size() > c.max_sector_dim) {
    throw CapacityError("sector dimension " + std::to_string(basis.size()) +
                        " exceeds run.max_sector_dim = " + std::to_string(c.max_sector_dim));
  }
}

std::string shortest(double v) {
  if (!std::isfinite(v)) return "inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Writes one spectrum artifact (csv + metadata or a single json) and returns
// the paths.
std::vector<std::filesystem::path> emit_spectra(const RunConfig& c, const std::string& stem,
                                                const EffectiveParams& p,
                                                const std::vector<SpectralResult>& results,
                                                double wall_seconds) {
  const auto dir = prepare_output(c);
  json meta = base_metadata(c);
  meta["params"] = params_json(p);
  meta["units"] = units_json();
  meta["wall_time_seconds"] = wall_seconds;
  meta["sectors"] = json::array();
  for (const auto& r : results) meta["sectors"].push_back(sector_json(r));

  if (c.format == Format::csv) {
    const auto csv = dir / (stem + ".csv");
    const auto side = dir / (stem + ".meta.json");
    write_file(csv, spectrum_csv(results));
    write_file(side, meta.dump(2) + "\n");
    return {csv, side};
  }
  json data = json::array();
  for (const auto& r : results) {
    json s;
    s["k_index"] = r.k_index;
    s["k_value"] = r.k_value;
    s["omega_hz"] = r.omega_hz;
    s["omega_dimensionless"] = r.energies;
    s["spectral_density"] = r.density;
    data.push_back(std::move(s));
  }
  meta["spectra"] = std::move(data);
  const auto path = dir / (stem + ".json");
  write_file(path, meta.dump(2) + "\n");
  return {path};
}

std::vector<SpectralResult> kpm_sectors(const RunConfig& c, const EffectiveParams& p,
                                        std::ostream& log) {
  const PhononBasis basis(c.n_sites, c.max_phonons);
  check_capacity(c, basis);
  KpmOptions options;
  options.n_moments = c.n_moments;
  options.epsilon = c.epsilon;
  std::vector<SpectralResult> out;
  for (int k : k_indices(c)) {
    out.push_back(spectral_function(make_sector(k, basis), basis, p, options));
    log << "  k_index " << k << ": dim " << basis.size() << ", "
        << out.back().metadata.runtime_seconds << " s\n";
  }
  return out;
}

RunResult run_spectrum(const RunConfig& c, std::ostream& log) {
  const auto start = Clock::now();
  const EffectiveParams p = hopping_points(c).front();
  const auto results = kpm_sectors(c, p, log);
  return {emit_spectra(c, "spectrum", p, results, seconds_since(start))};
}

RunResult run_sweep(const RunConfig& c, std::ostream& log) {
  RunResult out;
  for (const EffectiveParams& p : hopping_points(c)) {
    const auto start = Clock::now();
    log << "ratio " << shortest(p.adiabaticity_ratio()) << " (lambda_H "
        << format_double(p.lambda_h) << ")\n";
    const auto results = kpm_sectors(c, p, log);
    const auto files = emit_spectra(c, "sweep_ratio_" + shortest(p.adiabaticity_ratio()), p,
                                    results, seconds_since(start));
    out.files.insert(out.files.end(), files.begin(), files.end());
  }
  return out;
}

RunResult run_oracle(const RunConfig& c, std::ostream& log) {
  const auto start = Clock::now();
  const EffectiveParams p = hopping_points(c).front();
  const PhononBasis basis(c.n_sites, c.max_phonons);
  check_capacity(c, basis);
  std::vector<DenseSpectrum> spectra;
  for (int k : k_indices(c)) {
    spectra.push_back(dense_spectrum(make_sector(k, basis), basis, p));
    log << "  k_index " << k << ": dim " << basis.size() << " dense\n";
  }

  const auto dir = prepare_output(c);
  json meta = base_metadata(c);
  meta["params"] = params_json(p);
  meta["units"] = units_json();
  meta["wall_time_seconds"] = seconds_since(start);
  meta["sectors"] = json::array();
  for (const auto& d : spectra) {
    meta["sectors"].push_back({{"k_index", d.sector.k_index},
                               {"k_value", d.sector.k_value()},
                               {"dim", d.sector.dim},
                               {"weight_sum", d.weight_sum()}});
  }
  if (c.format == Format::json) {
    json data = json::array();
    for (const auto& d : spectra) {
      data.push_back({{"k_index", d.sector.k_index},
                      {"k_value", d.sector.k_value()},
                      {"energy_dimensionless", d.eigenvalues},
                      {"weight", d.weights}});
    }
    meta["eigenpairs"] = std::move(data);
    const auto path = dir / "oracle.json";
    write_file(path, meta.dump(2) + "\n");
    return {{path}};
  }
  std::string csv = "k_index,k_value,energy_dimensionless,omega_hz,weight\n";
  for (const auto& d : spectra) {
    const std::string prefix =
        std::to_string(d.sector.k_index) + ',' + format_double(d.sector.k_value()) + ',';
    for (std::size_t j = 0; j < d.eigenvalues.size(); ++j) {
      csv += prefix + format_double(d.eigenvalues[j]) + ',' +
             format_double(d.eigenvalues[j] * p.omega_delta) + ',' + format_double(d.weights[j]) +
             '\n';
    }
  }
  const auto path = dir / "oracle.csv";
  const auto side = dir / "oracle.meta.json";
  write_file(path, csv);
  write_file(side, meta.dump(2) + "\n");
  return {{path, side}};
}

RunResult run_ramsey(const RunConfig& c, std::ostream& log) {
  const auto start = Clock::now();
  const EffectiveParams p = hopping_points(c).front();
  const PhononBasis basis(c.n_sites, c.max_phonons);
  check_capacity(c, basis);
  const RamseySimulator sim(basis, p);
  const auto levels = real_space_spectrum(basis, p);

  // Frequency window two phonon energies beyond the spectrum; eta gives a
  // Lorentzian half width of two frequency bins.
  const double f_lo = (levels.front() - 2.0) * p.omega_delta;
  const double f_hi = (levels.back() + 2.0) * p.omega_delta;
  const double bin = (f_hi - f_lo) / (c.ramsey_bins - 1);
  const double eta = 2.0 * std::numbers::pi * 2.0 * bin;
  const double dt = 1.0 / (20.0 * std::max(std::abs(f_lo), std::abs(f_hi)));
  const auto n_times = static_cast<std::size_t>(std::ceil(20.0 / eta / dt)) + 1;
  std::vector<double> times(n_times), omega(c.ramsey_bins);
  for (std::size_t i = 0; i < n_times; ++i) times[i] = static_cast<double>(i) * dt;
  for (int i = 0; i < c.ramsey_bins; ++i) omega[i] = f_lo + i * bin;
  log << "  ramsey: " << n_times << " time points, eta " << format_double(eta) << " 1/s\n";

  const auto outcomes = ramsey_dataset(sim, c.ramsey_source, times);
  std::vector<GreensSeries> greens;
  std::vector<SpectralResult> spectra;
  for (int k : k_indices(c)) {
    greens.push_back(ramsey_reconstruct_greens(outcomes, k, c.n_sites));
    SpectralResult r;
    r.k_index = k;
    r.k_value = greens.back().k_value;
    r.omega_hz = omega;
    r.density = greens_to_spectrum(greens.back(), omega, eta);
    for (double f : omega) r.energies.push_back(f / p.omega_delta);
    spectra.push_back(std::move(r));
  }

  const auto dir = prepare_output(c);
  json meta = base_metadata(c);
  meta["params"] = params_json(p);
  meta["units"] = units_json();
  meta["eta_per_second"] = eta;
  meta["time_step_seconds"] = dt;
  meta["n_times"] = n_times;
  meta["wall_time_seconds"] = seconds_since(start);

  if (c.format == Format::json) {
    json g = json::array();
    for (const auto& s : greens) {
      std::vector<double> re, im;
      for (const Complex& z : s.values) {
        re.push_back(z.real());
        im.push_back(z.imag());
      }
      g.push_back({{"k_index", s.k_index}, {"k_value", s.k_value}, {"re_hbar_g", re}, {"im_hbar_g", im}});
    }
    json raw = json::array();
    for (const auto& o : outcomes) {
      raw.push_back({{"n", o.n}, {"n_prime", o.n_prime}, {"phi1", o.phi1}, {"phi2", o.phi2},
                     {"measured", o.measured}});
    }
    json sp = json::array();
    for (const auto& r : spectra) {
      sp.push_back({{"k_index", r.k_index}, {"k_value", r.k_value}, {"omega_hz", r.omega_hz},
                    {"spectral_density", r.density}});
    }
    meta["times"] = times;
    meta["greens"] = std::move(g);
    meta["measurements"] = std::move(raw);
    meta["spectra"] = std::move(sp);
    const auto path = dir / "ramsey.json";
    write_file(path, meta.dump(2) + "\n");
    return {{path}};
  }

  std::string raw = "n,n_prime,phi1,phi2,time_s,measured\n";
  for (const auto& o : outcomes) {
    const std::string prefix = std::to_string(o.n) + ',' + std::to_string(o.n_prime) + ',' +
                               format_double(o.phi1) + ',' + format_double(o.phi2) + ',';
    for (std::size_t i = 0; i < o.times.size(); ++i) {
      raw += prefix + format_double(o.times[i]) + ',' + format_double(o.measured[i]) + '\n';
    }
  }
  std::string g = "k_index,k_value,time_s,re_hbar_g,im_hbar_g\n";
  for (const auto& s : greens) {
    const std::string prefix = std::to_string(s.k_index) + ',' + format_double(s.k_value) + ',';
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      g += prefix + format_double(s.times[i]) + ',' + format_double(s.values[i].real()) + ',' +
           format_double(s.values[i].imag()) + '\n';
    }
  }
  RunResult out;
  out.files = {dir / "ramsey_raw.csv", dir / "ramsey_greens.csv", dir / "ramsey_spectrum.csv",
               dir / "ramsey.meta.json"};
  write_file(out.files[0], raw);
  write_file(out.files[1], g);
  write_file(out.files[2], spectrum_csv(spectra));
  write_file(out.files[3], meta.dump(2) + "\n");
  return out;
}

RunResult run_params(const RunConfig& c, std::ostream& out) {
  const ParamsReport report = params_report(c);
  out << format_params_report(report);
  const auto dir = prepare_output(c);
  json meta = base_metadata(c);
  if (report.chi_hz) meta["chi_hz"] = *report.chi_hz;
  meta["g_h"] = report.g_h;
  meta["points"] = json::array();
  for (const auto& p : hopping_points(c)) meta["points"].push_back(params_json(p));
  const auto path = dir / "params.json";
  write_file(path, meta.dump(2) + "\n");
  return {{path}};
}

}  // namespace

ParamsReport params_report(const RunConfig& c) {
  ParamsReport r;
  r.g_h = c.g_h;
  r.omega_delta_hz = c.omega_delta;
  if (c.circuit) {
    r.chi_hz = stark_shift(*c.circuit);
    r.dispersive_ratio = c.circuit->dispersive_ratio();
    r.drive_ratio = c.circuit->drive_ratio();
  }
  for (const EffectiveParams& p : hopping_points(c)) {
    ParamsRow row;
    row.t_e_hz = p.t_e;
    row.adiabaticity_ratio = p.adiabaticity_ratio();
    row.lambda_h = p.lambda_h;
    row.small_polaron = small_polaron_regime(p.g_h, p.lambda_h);
    row.adiabatic = row.adiabaticity_ratio < 1.0;
    r.rows.push_back(row);
  }
  return r;
}

std::string format_params_report(const ParamsReport& r) {
  std::string s;
  if (r.chi_hz) s += "chi_hz = " + format_double(*r.chi_hz) + "\n";
  if (r.dispersive_ratio) s += "dispersive_ratio = " + format_double(*r.dispersive_ratio) + "\n";
  if (r.drive_ratio) s += "drive_ratio = " + format_double(*r.drive_ratio) + "\n";
  s += "g_h = " + format_double(r.g_h) + "\n";
  s += "omega_delta_hz = " + format_double(r.omega_delta_hz) + "\n";
  s += "t_e_hz,adiabaticity_ratio,lambda_h,small_polaron,adiabatic\n";
  for (const ParamsRow& row : r.rows) {
    s += format_double(row.t_e_hz) + ',' + format_double(row.adiabaticity_ratio) + ',' +
         format_double(row.lambda_h) + ',' + (row.small_polaron ? "yes" : "no") + ',' +
         (row.adiabatic ? "yes" : "no") + '\n';
  }
  return s;
}

RunResult run(const RunConfig& c, std::ostream& out, std::ostream& log) {
  switch (c.mode) {
    case Mode::params: return run_params(c, out);
    case Mode::spectrum: return run_spectrum(c, log);
    case Mode::oracle: return run_oracle(c, log);
    case Mode::ramsey: return run_ramsey(c, log);
    case Mode::sweep: return run_sweep(c, log);
  }
  return {};
}

int exit_code(const std::exception& e) noexcept {
  const auto* err = dynamic_cast<const Error*>(&e);
  if (!err) return 1;
  switch (err->kind()) {
    case ErrorKind::config:
    case ErrorKind::domain: return 2;
    case ErrorKind::capacity: return 3;
    case ErrorKind::convergence: return 4;
    case ErrorKind::numerical: return 5;
    case ErrorKind::io: return 1;
  }
  return 1;
}

}  // namespace polaron::app
