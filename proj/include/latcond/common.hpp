#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace latcond {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Pinned numeric policy shared across modules.
namespace tol {
// Frequencies closer than this are merged into one measure atom.
inline constexpr double atom_bin = 1e-10;
// Atom weights in [-weight_clamp, 0) are clamped to zero (and counted);
// anything more negative is treated as a bug in the caller.
inline constexpr double weight_clamp = 1e-12;
// |beta*dE| below which exponential difference quotients switch to their
// series form to avoid cancellation.
inline constexpr double alpha_weight_series = 1e-6;
// Atoms with |nu| below this count as zero-frequency.
inline constexpr double zero_freq = 1e-12;
}  // namespace tol

// Invalid parameters / configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// Numerical factorization failure (surfaced per realization by the runner).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// SplitMix64 finalizer. Fully specified integer arithmetic so that streams
// are identical across platforms and compilers.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-realization seed: a fixed hash of (master seed, realization index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master + 0x9e3779b97f4a7c15ULL) ^
               (index + 0x165667b19e3779f9ULL));
}

// Sequential SplitMix64 stream.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ULL;
    return mix64(state);
  }
  // uniform on [0,1) with 53 random bits
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

}  // namespace latcond
