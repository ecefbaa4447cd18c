#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "latcond/common.hpp"

namespace latcond {

enum class Bc { periodic, open };
enum class Disorder { uniform, rademacher, none };

Bc bc_from_string(const std::string& s);
Disorder disorder_from_string(const std::string& s);
std::string to_string(Bc bc);
std::string to_string(Disorder d);

// Centered box {-half_side..half_side}^dim. With open boundary the box is the
// whole computation region and inner_half_side selects the smaller centered
// region that translation averages run over; on the torus the two coincide.
struct Box {
  int dim = 1;
  int half_side = 8;
  int inner_half_side = 8;
  Bc bc = Bc::periodic;

  int side() const { return 2 * half_side + 1; }
  long n_sites() const {
    long n = 1;
    for (int k = 0; k < dim; ++k) n *= side();
    return n;
  }
  long n_inner() const {
    long n = 1;
    for (int k = 0; k < dim; ++k) n *= 2 * inner_half_side + 1;
    return n;
  }

  // Row-major lexicographic index over coordinates, axis 0 slowest.
  long index(const std::array<int, 3>& x) const;
  std::array<int, 3> coords(long idx) const;
  bool in_inner(const std::array<int, 3>& x) const;

  // Neighbor x + step*e_axis; wraps on the torus. Returns -1 if it leaves an
  // open box.
  long neighbor(long idx, int axis, int step) const;

  void validate() const;  // throws ConfigError
};

// H0 = 2*dim on the diagonal, -1 on nearest-neighbor bonds (wrapped on the
// torus, dropped at an open boundary; the diagonal stays 2*dim either way).
Mat laplacian(const Box& box);

// Open chain of n sites (same stencil), for callers that work with raw
// matrices rather than boxes.
Mat chain_laplacian(int n);

// One disorder value per site in frozen index order. uniform: [-1,1],
// rademacher: +-1, none: 0. Mapping from raw bits is pinned here, not
// delegated to std:: distributions, so streams are platform-independent.
Vec sample_potential(long n_sites, Disorder kind, std::uint64_t seed);

// H = laplacian + lambda * diag(V)
Mat hamiltonian(const Box& box, double lambda, const Vec& potential);

}  // namespace latcond
