#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latcond/fields.hpp"
#include "latcond/kubo.hpp"
#include "latcond/lattice.hpp"
#include "latcond/measures.hpp"

namespace latcond {

// A disorder-averaged experiment. half_side is the half-side of the
// averaging window; with open boundaries the computation box is padded by
// `padding` sites per side (padding < 0 selects the automatic rule
// max(8, ceil(2 t_max)), or the pulse support for heat runs).
struct ExperimentConfig {
  int dim = 1;
  int half_side = 16;
  Bc bc = Bc::periodic;
  Disorder disorder = Disorder::uniform;
  double lambda = 1.0;
  double beta = 1.0;
  std::uint64_t seed = 1;
  long n_realizations = 8;
  double t_max = 10.0;
  long n_times = 101;
  int axis = 0;
  int padding = -1;
  int jobs = 1;

  // testing hook: these realization indices raise a solver failure
  std::vector<long> inject_failures;

  void validate() const;
};

// Resolved computation box. support_span > 0 replaces 2 t_max in the
// automatic padding rule.
Box computation_box(const ExperimentConfig& cfg, double support_span = -1.0);
int resolved_padding(const ExperimentConfig& cfg, double support_span = -1.0);

// Canonical serialization used for hashing and the summary echo. Excludes
// jobs (an execution detail) and testing hooks; padding is resolved.
std::string canonical_config_json(const ExperimentConfig& cfg,
                                  double support_span = -1.0);
std::uint64_t config_hash(const ExperimentConfig& cfg,
                          double support_span = -1.0);

struct ConductivityRun {
  Vec times;
  Vec mean_sigma_p;    // disorder mean of sigma_p(t) = Xi_p(t)
  Vec stderr_sigma_p;
  double mean_sigma_d = 0.0;
  double stderr_sigma_d = 0.0;
  double mean_mass = 0.0;        // mean mu_p(R)
  double mean_abs_moment = 0.0;  // mean int (1 + |nu|) dmu_p
  AtomicMeasure measure;         // empirical disorder average of mu_p
  long n_ok = 0;
  long n_failed = 0;
  std::uint64_t hash = 0;
};

// Runs n_realizations independent disorder samples (realization index ->
// seed via derive_seed), in `jobs` threads. Reductions are performed in
// realization order, so results are identical for any job count. Throws
// SolverError if more than 5% of realizations fail.
ConductivityRun run_conductivity(const ExperimentConfig& cfg);

struct HeatRun {
  double mean_q_time = 0.0;
  double stderr_q_time = 0.0;
  double mean_q_freq = 0.0;
  double stderr_q_freq = 0.0;
  double mean_q_dia = 0.0;
  double max_rel_mismatch = 0.0;  // max over realizations of |q_time - q_freq| rel
  long n_ok = 0;
  long n_failed = 0;
  std::uint64_t hash = 0;
};

HeatRun run_heat(const ExperimentConfig& cfg, const Pulse& pulse,
                 long n_time = 513, long n_freq = 769);

// Output files: sigma_p.csv (t,mean,stderr), measure.csv (nu,weight,kind),
// summary.json. All numbers are written with 17 significant digits and no
// timestamps, so reruns of the same config are byte-identical.
void write_conductivity_outputs(const std::string& out_dir,
                                const ExperimentConfig& cfg,
                                const ConductivityRun& run);
void write_heat_outputs(const std::string& out_dir, const ExperimentConfig& cfg,
                        const Pulse& pulse, const HeatRun& run);

}  // namespace latcond
