#include "latcond/lattice.hpp"

namespace latcond {

Bc bc_from_string(const std::string& s) {
  if (s == "periodic") return Bc::periodic;
  if (s == "open") return Bc::open;
  throw ConfigError("unknown boundary condition: " + s);
}

Disorder disorder_from_string(const std::string& s) {
  if (s == "uniform") return Disorder::uniform;
  if (s == "rademacher") return Disorder::rademacher;
  if (s == "none") return Disorder::none;
  throw ConfigError("unknown disorder distribution: " + s);
}

std::string to_string(Bc bc) { return bc == Bc::periodic ? "periodic" : "open"; }

std::string to_string(Disorder d) {
  switch (d) {
    case Disorder::uniform: return "uniform";
    case Disorder::rademacher: return "rademacher";
    default: return "none";
  }
}

long Box::index(const std::array<int, 3>& x) const {
  long idx = 0;
  for (int k = 0; k < dim; ++k) idx = idx * side() + (x[k] + half_side);
  return idx;
}

std::array<int, 3> Box::coords(long idx) const {
  std::array<int, 3> x{0, 0, 0};
  for (int k = dim - 1; k >= 0; --k) {
    x[k] = static_cast<int>(idx % side()) - half_side;
    idx /= side();
  }
  return x;
}

bool Box::in_inner(const std::array<int, 3>& x) const {
  for (int k = 0; k < dim; ++k)
    if (x[k] < -inner_half_side || x[k] > inner_half_side) return false;
  return true;
}

long Box::neighbor(long idx, int axis, int step) const {
  std::array<int, 3> x = coords(idx);
  x[axis] += step;
  if (x[axis] > half_side || x[axis] < -half_side) {
    if (bc == Bc::open) return -1;
    const int n = side();
    x[axis] = ((x[axis] + half_side) % n + n) % n - half_side;
  }
  return index(x);
}

void Box::validate() const {
  if (dim < 1 || dim > 3) throw ConfigError("dim must be 1, 2 or 3");
  if (half_side < 1) throw ConfigError("half_side must be >= 1");
  if (inner_half_side < 1 || inner_half_side > half_side)
    throw ConfigError("inner_half_side must be in [1, half_side]");
  if (bc == Bc::periodic && inner_half_side != half_side)
    throw ConfigError("periodic boxes average over the full box");
  if (n_sites() > 5000)
    throw ConfigError("box has more than 5000 sites; dense solves refused");
}

Mat laplacian(const Box& box) {
  const long n = box.n_sites();
  Mat h = Mat::Zero(n, n);
  for (long i = 0; i < n; ++i) {
    h(i, i) = 2.0 * box.dim;
    for (int axis = 0; axis < box.dim; ++axis) {
      for (int step : {-1, +1}) {
        const long j = box.neighbor(i, axis, step);
        if (j >= 0) h(i, j) -= 1.0;
      }
    }
  }
  return h;
}

Mat chain_laplacian(int n) {
  if (n < 2) throw ConfigError("chain needs at least 2 sites");
  Mat h = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = 2.0;
    if (i + 1 < n) {
      h(i, i + 1) = -1.0;
      h(i + 1, i) = -1.0;
    }
  }
  return h;
}

Vec sample_potential(long n_sites, Disorder kind, std::uint64_t seed) {
  Vec v = Vec::Zero(n_sites);
  if (kind == Disorder::none) return v;
  Rng rng(seed);
  for (long i = 0; i < n_sites; ++i) {
    if (kind == Disorder::uniform) {
      v[i] = 2.0 * rng.next_unit() - 1.0;
    } else {
      v[i] = (rng.next_u64() >> 63) ? 1.0 : -1.0;
    }
  }
  return v;
}

Mat hamiltonian(const Box& box, double lambda, const Vec& potential) {
  if (potential.size() != box.n_sites())
    throw ConfigError("potential size does not match box");
  Mat h = laplacian(box);
  h.diagonal() += lambda * potential;
  return h;
}

}  // namespace latcond
