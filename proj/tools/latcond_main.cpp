#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "latcond/continuum.hpp"
#include "latcond/dyson.hpp"
#include "latcond/fields.hpp"
#include "latcond/kubo.hpp"
#include "latcond/runner.hpp"
#include "latcond/spectral.hpp"

namespace {

using namespace latcond;

struct CommonFlags {
  ExperimentConfig cfg;
  std::string bc = "periodic";
  std::string disorder = "uniform";
  std::string out;

  void add_to(CLI::App* cmd, bool need_out = true) {
    cmd->add_option("--dim", cfg.dim, "lattice dimension (1..3)");
    cmd->add_option("--half-side", cfg.half_side,
                    "half-side of the averaging window");
    cmd->add_option("--bc", bc, "boundary condition: periodic | open");
    cmd->add_option("--disorder", disorder,
                    "disorder law: uniform | rademacher | none");
    cmd->add_option("--lambda", cfg.lambda, "disorder strength");
    cmd->add_option("--beta", cfg.beta, "inverse temperature");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--seeds", cfg.n_realizations, "number of disorder samples");
    cmd->add_option("--tmax", cfg.t_max, "largest time");
    cmd->add_option("--tsteps", cfg.n_times, "number of time points");
    cmd->add_option("--axis", cfg.axis, "bond direction");
    cmd->add_option("--padding", cfg.padding,
                    "extra sites per side for open boundaries (-1 = auto)");
    cmd->add_option("--jobs", cfg.jobs, "worker threads");
    auto* o = cmd->add_option("--out", out, "output directory");
    if (need_out) o->required();
  }

  ExperimentConfig resolve() {
    cfg.bc = bc_from_string(bc);
    cfg.disorder = disorder_from_string(disorder);
    cfg.validate();
    return cfg;
  }
};

void add_pulse_flags(CLI::App* cmd, Pulse& pulse, double& rescale) {
  cmd->add_option("--amp", pulse.amp, "pulse amplitude");
  cmd->add_option("--pulse-center", pulse.center, "pulse center (slow time)");
  cmd->add_option("--pulse-width", pulse.width, "pulse width (slow time)");
  cmd->add_option("--trunc-radius", pulse.trunc_radius,
                  "support half-width (slow time)");
  cmd->add_option("--time-scale", pulse.time_scale, "slow-time scale T");
  cmd->add_option("--time-rescale", rescale,
                  "multiply the time scale by this factor");
}

int cmd_conductivity(CommonFlags& flags) {
  const ExperimentConfig cfg = flags.resolve();
  const ConductivityRun run = run_conductivity(cfg);
  write_conductivity_outputs(flags.out, cfg, run);
  std::printf("wrote %s: %ld realizations ok, %ld failed, sigma_d = %.6g\n",
              flags.out.c_str(), run.n_ok, run.n_failed, run.mean_sigma_d);
  return 0;
}

int cmd_sweep(CommonFlags& flags, std::vector<double>& lambdas) {
  if (lambdas.empty()) throw ConfigError("sweep: pass at least one --lambdas value");
  ExperimentConfig cfg = flags.resolve();
  nlohmann::ordered_json sweep;
  sweep["lambdas"] = lambdas;
  std::vector<double> sups;
  for (double lam : lambdas) {
    cfg.lambda = lam;
    cfg.validate();
    const ConductivityRun run = run_conductivity(cfg);
    char sub[64];
    std::snprintf(sub, sizeof sub, "lambda_%g", lam);
    write_conductivity_outputs(
        (std::filesystem::path(flags.out) / sub).string(), cfg, run);
    double sup = 0.0;
    for (long k = 0; k < run.times.size(); ++k)
      sup = std::max(sup, std::abs(run.mean_sigma_p[k]));
    sups.push_back(sup);
    std::printf("lambda = %-8g sup|sigma_p| = %.8g\n", lam, sup);
  }
  sweep["sup_abs_sigma_p"] = sups;
  std::ofstream f(std::filesystem::path(flags.out) / "sweep.json");
  f << sweep.dump(2) << '\n';
  return 0;
}

int cmd_heat(CommonFlags& flags, Pulse& pulse, double rescale, long n_time,
             long n_freq) {
  const ExperimentConfig cfg = flags.resolve();
  pulse = pulse.rescaled(rescale);
  const HeatRun run = run_heat(cfg, pulse, n_time, n_freq);
  write_heat_outputs(flags.out, cfg, pulse, run);
  std::printf("Q_time = %.8g +- %.2g   Q_freq = %.8g   Q_dia = %.3g   "
              "max rel mismatch = %.3g\n",
              run.mean_q_time, run.stderr_q_time, run.mean_q_freq,
              run.mean_q_dia, run.max_rel_mismatch);
  return 0;
}

int cmd_drude(double d0, double relax, double tmax, long tsteps,
              const std::string& out) {
  if (!(d0 > 0.0) || !(relax > 0.0) || !(tmax > 0.0) || tsteps < 2)
    throw ConfigError("drude: d0, relax time, tmax must be positive");
  std::filesystem::create_directories(out);
  std::ofstream f(std::filesystem::path(out) / "drude.csv");
  f << "t,closed_form,quadrature,abs_err\n";
  double worst = 0.0;
  for (long k = 0; k < tsteps; ++k) {
    const double t = tmax * double(k) / double(tsteps - 1);
    const double exact = drude_sigma(d0, relax, t);
    const double quad = drude_cos_transform(d0, relax, t);
    const double err = std::abs(exact - quad);
    worst = std::max(worst, err);
    char line[160];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.3g\n", t, exact, quad,
                  err);
    f << line;
  }
  std::printf("max |closed form - quadrature| = %.3g over %ld times\n", worst,
              tsteps);
  return 0;
}

int cmd_free(int dim, int window, double beta, long grid, double tmax,
             long tsteps) {
  const double sd_bz = sigma_d_free(dim, beta, grid);
  ExperimentConfig cfg;
  cfg.dim = dim;
  cfg.half_side = 4 * window;  // plain large periodic box for the lattice side
  cfg.lambda = 0.0;
  cfg.beta = beta;
  cfg.disorder = Disorder::none;
  cfg.validate();
  const Box box = computation_box(cfg);
  const EigenSystem es = diagonalize(hamiltonian(box, 0.0, Vec::Zero(box.n_sites())));
  const double sd_lat = sigma_d(box, es, beta, 0);
  std::printf("sigma_d: lattice %.12g   momentum integral %.12g   diff %.3g\n",
              sd_lat, sd_bz, std::abs(sd_lat - sd_bz));

  // windowed free paramagnetic coefficient: open padded box vs BZ pairing
  ExperimentConfig wcfg;
  wcfg.dim = dim;
  wcfg.half_side = window;
  wcfg.bc = Bc::open;
  wcfg.lambda = 0.0;
  wcfg.beta = beta;
  wcfg.disorder = Disorder::none;
  wcfg.t_max = tmax;
  wcfg.validate();
  const Box wbox = computation_box(wcfg);
  const EigenSystem wes =
      diagonalize(hamiltonian(wbox, 0.0, Vec::Zero(wbox.n_sites())));
  Vec times = Vec::LinSpaced(tsteps, 0.0, tmax);
  const Vec xi = xi_paramagnetic(wbox, wes, beta, 0, times);
  std::printf("%8s %16s %16s %10s\n", "t", "lattice", "momentum", "diff");
  for (long k = 0; k < tsteps; ++k) {
    const double bz = free_xi_bz(dim, window, beta, times[k], grid / 2, grid / 2);
    std::printf("%8.3f %16.10g %16.10g %10.2e\n", times[k], xi[k], bz,
                std::abs(xi[k] - bz));
  }
  return 0;
}

int cmd_dyson(int sites, double lambda, double tau, int orders,
              std::uint64_t seed) {
  if (sites < 2 || orders < 1) throw ConfigError("dyson: bad sites/orders");
  const Mat lap = chain_laplacian(sites);
  const Vec v = sample_potential(sites, Disorder::uniform, seed);
  CVec psi0 = CVec::Zero(sites);
  psi0[sites / 2] = 1.0;
  std::printf("%3s %14s %14s %10s\n", "N", "error", "bound", "ratio");
  for (int n = 1; n <= orders; ++n) {
    const DysonResult r = dyson_propagate(lap, v, lambda, tau, n, 1, psi0);
    std::printf("%3d %14.6e %14.6e %10.4f\n", n, r.error, r.bound,
                r.error / r.bound);
  }
  return 0;
}

int cmd_selftest() {
  int failed = 0;
  const auto check = [&](bool ok, const char* name) {
    std::printf("%s - %s\n", ok ? "ok  " : "FAIL", name);
    if (!ok) ++failed;
  };

  // Fermi weight: reflection symmetry of the two stable branches
  {
    bool ok = true;
    for (double k : {-30.0, -1.0, 0.0, 0.5, 40.0})
      for (double a : {0.0, 0.3, 1.0})
        ok = ok && fermi_weight(a, 1.0, k) == fermi_weight(1.0 - a, 1.0, -k);
    check(ok, "fermi weight KMS reflection");
  }

  // Kubo-Mori kernel against its finite-difference definition
  {
    const auto fermi = [](double e) { return 1.0 / (1.0 + std::exp(2.0 * e)); };
    const double k1 = kubo_mori_kernel(0.3, 1.1, 2.0);
    const double k2 = (fermi(1.1) - fermi(0.3)) / (0.3 - 1.1);
    check(std::abs(k1 - k2) < 1e-14, "kernel matches difference quotient");
  }

  ExperimentConfig cfg;
  cfg.dim = 1;
  cfg.half_side = 6;
  cfg.lambda = 0.8;
  cfg.beta = 1.3;
  cfg.n_realizations = 2;
  cfg.t_max = 2.0;
  cfg.n_times = 5;
  const Box box = computation_box(cfg);
  const Vec v = sample_potential(box.n_sites(), cfg.disorder, derive_seed(7, 0));
  const EigenSystem es = diagonalize(hamiltonian(box, cfg.lambda, v));

  {
    const TransportPairs pairs = transport_pairs(box, es, cfg.beta, 0);
    bool ok = xi_from_pairs(pairs, 0.0) == 0.0;
    for (double t : {0.5, 1.0, 3.0}) ok = ok && xi_from_pairs(pairs, t) <= 0.0;
    check(ok, "sigma_p vanishes at t = 0 and stays nonpositive");

    const double slow = xi_paramagnetic_direct(box, es, cfg.beta, 0, 1.25);
    const double fast = xi_from_pairs(pairs, 1.25);
    check(std::abs(slow - fast) < 1e-10, "kernel route agrees with spectral route");

    const AtomicMeasure mu = paramagnetic_measure(box, es, cfg.beta, 0);
    bool pm = true;
    for (double t : {0.5, 1.7})
      pm = pm && std::abs(sigma_from_measure(mu, t) - xi_from_pairs(pairs, t)) < 1e-11;
    check(pm, "measure pairing reproduces sigma_p");
  }

  {
    ExperimentConfig fc;
    fc.dim = 1;
    fc.half_side = 32;
    fc.lambda = 0.0;
    fc.disorder = Disorder::none;
    fc.beta = 1.0;
    const Box fbox = computation_box(fc);
    const EigenSystem fes =
        diagonalize(hamiltonian(fbox, 0.0, Vec::Zero(fbox.n_sites())));
    const double lat = sigma_d(fbox, fes, 1.0, 0);
    const double bz = sigma_d_free(1, 1.0, 512);
    check(std::abs(lat - bz) < 1e-8, "free diamagnetic coefficient matches momentum integral");
  }

  {
    const Mat lap = chain_laplacian(8);
    CVec psi0 = CVec::Zero(8);
    psi0[4] = 1.0;
    const DysonResult r =
        dyson_propagate(lap, Vec::Zero(8), 0.0, 0.7, 8, 1, psi0, 16);
    CVec taylor = CVec::Zero(8);
    CVec term = psi0;
    for (int n = 0; n < 8; ++n) {
      taylor += term;
      term = Cplx(0.0, -0.7) * (lap * term) / double(n + 1);
    }
    check((r.psi - taylor).norm() < 1e-12, "hopping expansion reduces to Taylor at lambda = 0");
  }

  {
    const AtomicMeasure mu = paramagnetic_measure(box, es, cfg.beta, 0);
    const double sd = sigma_d(box, es, cfg.beta, 0);
    const HeatResult h = heat_production(mu, sd, Pulse{}, 257, 385);
    const bool ok = h.q_time > 0.0 &&
                    std::abs(h.q_time - h.q_freq) <= 1e-6 * std::abs(h.q_time);
    check(ok, "heat production routes agree");
  }

  {
    cfg.jobs = 1;
    const ConductivityRun a = run_conductivity(cfg);
    cfg.jobs = 3;
    const ConductivityRun b = run_conductivity(cfg);
    bool same = a.mean_sigma_p.size() == b.mean_sigma_p.size();
    for (long k = 0; same && k < a.mean_sigma_p.size(); ++k)
      same = a.mean_sigma_p[k] == b.mean_sigma_p[k];
    same = same && a.mean_sigma_d == b.mean_sigma_d;
    check(same, "reductions identical across job counts");
  }

  std::printf("%s\n", failed == 0 ? "selftest passed" : "selftest FAILED");
  return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-volume conductivity of disordered lattice fermions"};
  app.require_subcommand(1);

  CommonFlags cond_flags;
  auto* cond = app.add_subcommand("conductivity",
                                  "disorder-averaged sigma_p, sigma_d and measure");
  cond_flags.add_to(cond);

  CommonFlags sweep_flags;
  std::vector<double> lambdas;
  auto* sweep = app.add_subcommand("sweep", "conductivity across disorder strengths");
  sweep_flags.add_to(sweep);
  sweep->add_option("--lambdas", lambdas, "disorder strengths")->required();

  CommonFlags heat_flags;
  Pulse pulse;
  double rescale = 1.0;
  long n_time = 513, n_freq = 769;
  auto* heat = app.add_subcommand("heat", "second-order heat production of a pulse");
  heat_flags.add_to(heat);
  add_pulse_flags(heat, pulse, rescale);
  heat->add_option("--time-grid", n_time, "time-route grid points");
  heat->add_option("--freq-grid", n_freq, "frequency-route grid points");

  double d0 = 1.0, relax = 1.0, drude_tmax = 5.0;
  long drude_steps = 21;
  std::string drude_out = "drude_out";
  auto* drude = app.add_subcommand("drude", "Lorentzian measure sanity table");
  drude->add_option("--d0", d0, "weight");
  drude->add_option("--relax-time", relax, "relaxation time");
  drude->add_option("--tmax", drude_tmax, "largest time");
  drude->add_option("--tsteps", drude_steps, "time points");
  drude->add_option("--out", drude_out, "output directory");

  int free_dim = 1, free_window = 8;
  double free_beta = 1.0, free_tmax = 1.0;
  long free_grid = 256, free_steps = 5;
  auto* fr = app.add_subcommand("free", "clean-system checks against momentum integrals");
  fr->add_option("--dim", free_dim, "dimension");
  fr->add_option("--window", free_window, "window half-side");
  fr->add_option("--beta", free_beta, "inverse temperature");
  fr->add_option("--grid", free_grid, "momentum grid per axis");
  fr->add_option("--tmax", free_tmax, "largest time");
  fr->add_option("--tsteps", free_steps, "time points");

  int dy_sites = 8, dy_orders = 6;
  double dy_lambda = 1.0, dy_tau = 0.5;
  std::uint64_t dy_seed = 1;
  auto* dy = app.add_subcommand("dyson", "hopping-expansion error against its bound");
  dy->add_option("--sites", dy_sites, "chain length");
  dy->add_option("--lambda", dy_lambda, "disorder strength");
  dy->add_option("--tau", dy_tau, "propagation time");
  dy->add_option("--orders", dy_orders, "largest expansion order");
  dy->add_option("--seed", dy_seed, "disorder seed");

  auto* st = app.add_subcommand("selftest", "fast internal consistency checks");
  (void)st;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cond->parsed()) return cmd_conductivity(cond_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, lambdas);
    if (heat->parsed()) return cmd_heat(heat_flags, pulse, rescale, n_time, n_freq);
    if (drude->parsed()) return cmd_drude(d0, relax, drude_tmax, drude_steps, drude_out);
    if (fr->parsed())
      return cmd_free(free_dim, free_window, free_beta, free_grid, free_tmax,
                      free_steps);
    if (dy->parsed()) return cmd_dyson(dy_sites, dy_lambda, dy_tau, dy_orders, dy_seed);
    if (st->parsed()) return cmd_selftest();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
