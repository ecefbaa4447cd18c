#include "latcond/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "latcond/spectral.hpp"

namespace latcond {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double kahan_sum(const std::vector<double>& xs) {
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double u = s + y;
    c = (u - s) - y;
    s = u;
  }
  return s;
}

struct MeanErr {
  double mean = 0.0;
  double se = 0.0;
};

MeanErr mean_stderr(const std::vector<double>& xs) {
  MeanErr r;
  const long n = long(xs.size());
  if (n == 0) return r;
  r.mean = kahan_sum(xs) / double(n);
  if (n < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.se = std::sqrt(ss / (double(n) * double(n - 1)));
  return r;
}

struct RealizationOut {
  bool ok = false;
  std::string error;
  Vec sigma_p;
  double sig_d = 0.0;
  double mass = 0.0;
  double abs_moment = 0.0;
  std::vector<Atom> atoms;  // binned, full line
  HeatResult heat;
};

// Runs fn(idx) for idx in [0, n) on cfg.jobs threads; results land in a
// vector indexed by realization, so downstream reductions are order-fixed.
template <typename F>
std::vector<RealizationOut> run_indexed(long n, int jobs, F&& fn) {
  std::vector<RealizationOut> out(n);
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long idx = next.fetch_add(1);
      if (idx >= n) return;
      try {
        out[idx] = fn(idx);
        out[idx].ok = true;
      } catch (const std::exception& e) {
        out[idx].ok = false;
        out[idx].error = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

void check_failures(const std::vector<RealizationOut>& outs) {
  long failed = 0;
  std::string first;
  for (const auto& o : outs)
    if (!o.ok) {
      ++failed;
      if (first.empty()) first = o.error;
    }
  if (failed * 20 > long(outs.size()))  // > 5%
    throw SolverError("too many failed realizations (" + std::to_string(failed) +
                      "/" + std::to_string(outs.size()) + "): " + first);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dim < 1 || dim > 3) throw ConfigError("config: dim must be 1..3");
  if (half_side < 1) throw ConfigError("config: half_side must be >= 1");
  if (!(std::isfinite(lambda)) || lambda < 0.0)
    throw ConfigError("config: lambda must be finite and >= 0");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ConfigError("config: beta must be positive");
  if (n_realizations < 1) throw ConfigError("config: need at least one realization");
  if (!(t_max >= 0.0) || !std::isfinite(t_max))
    throw ConfigError("config: t_max must be >= 0");
  if (n_times < 1) throw ConfigError("config: n_times must be >= 1");
  if (axis < 0 || axis >= dim) throw ConfigError("config: axis out of range");
  if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
}

int resolved_padding(const ExperimentConfig& cfg, double support_span) {
  if (cfg.bc == Bc::periodic) return 0;
  if (cfg.padding >= 0) return cfg.padding;
  const double span = (support_span > 0.0) ? support_span : 2.0 * cfg.t_max;
  return std::max(8, int(std::ceil(span)));
}

Box computation_box(const ExperimentConfig& cfg, double support_span) {
  cfg.validate();
  Box box;
  box.dim = cfg.dim;
  box.bc = cfg.bc;
  box.inner_half_side = cfg.half_side;
  box.half_side = cfg.half_side + resolved_padding(cfg, support_span);
  box.validate();
  return box;
}

std::string canonical_config_json(const ExperimentConfig& cfg,
                                  double support_span) {
  ordered_json j;
  j["dim"] = cfg.dim;
  j["half_side"] = cfg.half_side;
  j["bc"] = to_string(cfg.bc);
  j["disorder"] = to_string(cfg.disorder);
  j["lambda"] = cfg.lambda;
  j["beta"] = cfg.beta;
  j["seed"] = cfg.seed;
  j["n_realizations"] = cfg.n_realizations;
  j["t_max"] = cfg.t_max;
  j["n_times"] = cfg.n_times;
  j["axis"] = cfg.axis;
  j["padding"] = resolved_padding(cfg, support_span);
  return j.dump();
}

std::uint64_t config_hash(const ExperimentConfig& cfg, double support_span) {
  const std::string s = canonical_config_json(cfg, support_span);
  std::uint64_t h = 14695981039346656037ULL;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

ConductivityRun run_conductivity(const ExperimentConfig& cfg) {
  const Box box = computation_box(cfg);
  ConductivityRun run;
  run.hash = config_hash(cfg);
  if (cfg.n_times == 1)
    run.times = Vec::Constant(1, cfg.t_max);
  else
    run.times = Vec::LinSpaced(cfg.n_times, 0.0, cfg.t_max);

  const auto one = [&](long idx) {
    for (long bad : cfg.inject_failures)
      if (bad == idx) throw SolverError("injected failure");
    RealizationOut r;
    const Vec v = sample_potential(box.n_sites(), cfg.disorder,
                                   derive_seed(cfg.seed, std::uint64_t(idx)));
    const EigenSystem es = diagonalize(hamiltonian(box, cfg.lambda, v));
    const TransportPairs pairs = transport_pairs(box, es, cfg.beta, cfg.axis);
    r.sigma_p.resize(run.times.size());
    for (long k = 0; k < run.times.size(); ++k)
      r.sigma_p[k] = xi_from_pairs(pairs, run.times[k]);
    r.sig_d = sigma_d(box, es, cfg.beta, cfg.axis);
    const AtomicMeasure mu = paramagnetic_measure(box, es, cfg.beta, cfg.axis);
    r.mass = total_mass(mu);
    r.abs_moment = abs_first_moment(mu);
    r.atoms = mu.atoms;
    return r;
  };

  const auto outs = run_indexed(cfg.n_realizations, cfg.jobs, one);
  check_failures(outs);

  std::vector<double> sd, mass, mom;
  std::vector<Atom> pooled;
  std::vector<std::vector<double>> sp(run.times.size());
  for (const auto& o : outs) {
    if (!o.ok) {
      ++run.n_failed;
      continue;
    }
    ++run.n_ok;
    sd.push_back(o.sig_d);
    mass.push_back(o.mass);
    mom.push_back(o.abs_moment);
    for (long k = 0; k < run.times.size(); ++k) sp[k].push_back(o.sigma_p[k]);
    for (const auto& a : o.atoms) pooled.push_back(a);
  }

  run.mean_sigma_p.resize(run.times.size());
  run.stderr_sigma_p.resize(run.times.size());
  for (long k = 0; k < run.times.size(); ++k) {
    const MeanErr me = mean_stderr(sp[k]);
    run.mean_sigma_p[k] = me.mean;
    run.stderr_sigma_p[k] = me.se;
  }
  const MeanErr sdm = mean_stderr(sd);
  run.mean_sigma_d = sdm.mean;
  run.stderr_sigma_d = sdm.se;
  run.mean_mass = mean_stderr(mass).mean;
  run.mean_abs_moment = mean_stderr(mom).mean;

  for (auto& a : pooled) a.weight /= double(run.n_ok);
  run.measure =
      AtomicMeasure::checked(bin_atoms(std::move(pooled)), MeasureKind::paramagnetic);
  return run;
}

HeatRun run_heat(const ExperimentConfig& cfg, const Pulse& pulse, long n_time,
                 long n_freq) {
  pulse.validate();
  const double span = pulse.support_hi() - pulse.support_lo();
  const Box box = computation_box(cfg, span);
  HeatRun run;
  run.hash = config_hash(cfg, span);

  const auto one = [&](long idx) {
    for (long bad : cfg.inject_failures)
      if (bad == idx) throw SolverError("injected failure");
    RealizationOut r;
    const Vec v = sample_potential(box.n_sites(), cfg.disorder,
                                   derive_seed(cfg.seed, std::uint64_t(idx)));
    const EigenSystem es = diagonalize(hamiltonian(box, cfg.lambda, v));
    const AtomicMeasure mu = paramagnetic_measure(box, es, cfg.beta, cfg.axis);
    const double sig_d = sigma_d(box, es, cfg.beta, cfg.axis);
    r.heat = heat_production(mu, sig_d, pulse, n_time, n_freq);
    return r;
  };

  const auto outs = run_indexed(cfg.n_realizations, cfg.jobs, one);
  check_failures(outs);

  std::vector<double> qt, qf, qd;
  for (const auto& o : outs) {
    if (!o.ok) {
      ++run.n_failed;
      continue;
    }
    ++run.n_ok;
    qt.push_back(o.heat.q_time);
    qf.push_back(o.heat.q_freq);
    qd.push_back(o.heat.q_dia);
    const double denom = std::max(std::abs(o.heat.q_time), 1e-300);
    run.max_rel_mismatch = std::max(
        run.max_rel_mismatch, std::abs(o.heat.q_time - o.heat.q_freq) / denom);
  }
  const MeanErr t = mean_stderr(qt), f = mean_stderr(qf), d = mean_stderr(qd);
  run.mean_q_time = t.mean;
  run.stderr_q_time = t.se;
  run.mean_q_freq = f.mean;
  run.stderr_q_freq = f.se;
  run.mean_q_dia = d.mean;
  return run;
}

void write_conductivity_outputs(const std::string& out_dir,
                                const ExperimentConfig& cfg,
                                const ConductivityRun& run) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  {
    std::ofstream f(fs::path(out_dir) / "sigma_p.csv");
    if (!f) throw ConfigError("cannot write to " + out_dir);
    f << "t,mean,stderr\n";
    for (long k = 0; k < run.times.size(); ++k)
      f << fmt17(run.times[k]) << ',' << fmt17(run.mean_sigma_p[k]) << ','
        << fmt17(run.stderr_sigma_p[k]) << '\n';
  }
  {
    std::ofstream f(fs::path(out_dir) / "measure.csv");
    f << "nu,weight,kind\n";
    for (const auto& a : run.measure.atoms)
      f << fmt17(a.nu) << ',' << fmt17(a.weight) << ",paramagnetic\n";
  }
  {
    ordered_json j;
    j["config"] = ordered_json::parse(canonical_config_json(cfg));
    char hex[24];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(run.hash));
    j["config_hash"] = hex;
    j["n_ok"] = run.n_ok;
    j["n_failed"] = run.n_failed;
    j["sigma_d_mean"] = run.mean_sigma_d;
    j["sigma_d_stderr"] = run.stderr_sigma_d;
    j["measure_mass_mean"] = run.mean_mass;
    j["abs_first_moment_mean"] = run.mean_abs_moment;
    double sup = 0.0;
    for (long k = 0; k < run.times.size(); ++k)
      sup = std::max(sup, std::abs(run.mean_sigma_p[k]));
    j["sup_abs_sigma_p"] = sup;
    std::ofstream f(fs::path(out_dir) / "summary.json");
    f << j.dump(2) << '\n';
  }
}

void write_heat_outputs(const std::string& out_dir, const ExperimentConfig& cfg,
                        const Pulse& pulse, const HeatRun& run) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  ordered_json j;
  const double span = pulse.support_hi() - pulse.support_lo();
  j["config"] = ordered_json::parse(canonical_config_json(cfg, span));
  char hex[24];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(run.hash));
  j["config_hash"] = hex;
  j["pulse"] = {{"amp", pulse.amp},
                {"center", pulse.center},
                {"width", pulse.width},
                {"trunc_radius", pulse.trunc_radius},
                {"time_scale", pulse.time_scale}};
  j["n_ok"] = run.n_ok;
  j["n_failed"] = run.n_failed;
  j["q_time_mean"] = run.mean_q_time;
  j["q_time_stderr"] = run.stderr_q_time;
  j["q_freq_mean"] = run.mean_q_freq;
  j["q_freq_stderr"] = run.stderr_q_freq;
  j["q_dia_mean"] = run.mean_q_dia;
  j["max_rel_mismatch"] = run.max_rel_mismatch;
  std::ofstream f(fs::path(out_dir) / "heat.json");
  f << j.dump(2) << '\n';
}

}  // namespace latcond
