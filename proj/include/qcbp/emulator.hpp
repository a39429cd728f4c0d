#pragma once

// Noiseless state-vector emulation of a Rydberg atom register driven by
//   H(t) = Ω(t) Σ σx_i − δ(t) Σ n_i + Σ_{i<j} C6 / r_ij^6 n_i n_j
// with second-order Strang splitting, and multinomial bitstring sampling.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcbp/embedding.hpp"

namespace qcbp {

class EmulatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Piecewise-linear function given by (t, value) breakpoints.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> pts) : pts_(std::move(pts)) {
    if (pts_.empty()) throw EmulatorError("piecewise-linear function needs at least one breakpoint");
    for (std::size_t i = 1; i < pts_.size(); ++i)
      if (!(pts_[i].first > pts_[i - 1].first)) throw EmulatorError("breakpoints must be strictly increasing in t");
  }

  double operator()(double t) const {
    if (t <= pts_.front().first) return pts_.front().second;
    if (t >= pts_.back().first) return pts_.back().second;
    auto hi = std::upper_bound(pts_.begin(), pts_.end(), t,
                               [](double x, const auto& p) { return x < p.first; });
    auto lo = hi - 1;
    const double f = (t - lo->first) / (hi->first - lo->first);
    return lo->second + f * (hi->second - lo->second);
  }

  const std::vector<std::pair<double, double>>& breakpoints() const { return pts_; }

 private:
  std::vector<std::pair<double, double>> pts_;
};

struct PulseSchedule {
  double duration = 0.0;  // µs
  PiecewiseLinear omega;  // rad/µs
  PiecewiseLinear delta;  // rad/µs

  PulseSchedule() = default;
  PulseSchedule(double duration_us, PiecewiseLinear om, PiecewiseLinear de)
      : duration(duration_us), omega(std::move(om)), delta(std::move(de)) {
    if (!(duration > 0.0)) throw EmulatorError("pulse duration must be positive");
    for (const auto* f : {&omega, &delta}) {
      const auto& b = f->breakpoints();
      if (std::abs(b.front().first) > 1e-12 || std::abs(b.back().first - duration) > 1e-12)
        throw EmulatorError("pulse breakpoints must cover [0, duration]");
    }
    if (omega(0.0) != 0.0 || omega(duration) != 0.0)
      throw EmulatorError("Rabi frequency must vanish at both ends of the pulse");
  }
};

struct EmulatorConfig {
  double c6 = 877455.0;                         // rad·µm^6/µs
  double dt = 1e-3;                             // µs
  int shots = 200;
  std::uint64_t seed = 0;
  double omega_max = 4.0 * std::numbers::pi;    // rad/µs, hardware clamp
  double duration = 3.0;                        // µs
  double rise_fraction = 0.15;
  double fall_fraction = 0.15;
  double delta_start = -15.0;                   // rad/µs
  double delta_end = 15.0;                      // rad/µs
  int max_qubits = 20;
  bool half_rabi = false;                       // use Ω/2 on the σx term instead of Ω

  void validate() const {
    if (!(dt > 0.0)) throw EmulatorError("dt must be positive");
    if (shots < 1) throw EmulatorError("shots must be >= 1");
    if (!(c6 > 0.0)) throw EmulatorError("c6 must be positive");
    if (!(duration > 0.0)) throw EmulatorError("duration must be positive");
    if (rise_fraction < 0 || fall_fraction < 0 || rise_fraction + fall_fraction > 1.0)
      throw EmulatorError("rise/fall fractions must be non-negative and sum to at most 1");
  }
};

struct BlockadeParams {
  double r_b = 0.0;         // µm
  double omega_b = 0.0;     // C6 / r_b^6
  double omega_peak = 0.0;  // min(omega_b, omega_max)
};

/// r_b = sqrt(R_min * r_max); falls back to the only available scale when the
/// graph is complete (no R_min) or edgeless (no r_max).
inline BlockadeParams blockade_params(const EmbeddingReport& report, const EmulatorConfig& cfg) {
  BlockadeParams b;
  if (report.r_max && report.R_min) b.r_b = std::sqrt(*report.R_min * *report.r_max);
  else if (report.r_max) b.r_b = *report.r_max;
  else if (report.R_min) b.r_b = *report.R_min;
  else throw EmulatorError("blockade radius undefined: register has fewer than two atoms");
  b.omega_b = cfg.c6 / std::pow(b.r_b, 6);
  b.omega_peak = std::min(b.omega_b, cfg.omega_max);
  return b;
}

inline PulseSchedule build_adiabatic_pulse(const EmbeddingReport& report, const EmulatorConfig& cfg) {
  cfg.validate();
  const double peak = blockade_params(report, cfg).omega_peak;
  const double T = cfg.duration;
  std::vector<std::pair<double, double>> om{{0.0, 0.0}};
  const double t_rise = cfg.rise_fraction * T, t_fall = (1.0 - cfg.fall_fraction) * T;
  if (t_rise > 0.0) om.emplace_back(t_rise, peak);
  if (t_fall > t_rise && t_fall < T) om.emplace_back(t_fall, peak);
  om.emplace_back(T, 0.0);
  return PulseSchedule(T, PiecewiseLinear(std::move(om)),
                       PiecewiseLinear({{0.0, cfg.delta_start}, {T, cfg.delta_end}}));
}

/// Amplitude index bit i is the occupation n_i of atom i.
struct StateVector {
  int n = 0;
  std::vector<std::complex<double>> amplitudes;

  double norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
  }
  double probability(std::uint64_t basis) const { return std::norm(amplitudes[basis]); }
};

// Diagonal interaction energies Σ_{i<j} C6/r^6 n_i n_j for every basis state.
inline std::vector<double> interaction_energies(const Register& reg, double c6) {
  const int n = reg.size();
  std::vector<double> pair(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pair[static_cast<std::size_t>(i * n + j)] = c6 / std::pow(reg.distance(i, j), 6);
  std::vector<double> u(std::size_t{1} << n, 0.0);
  for (std::uint64_t z = 1; z < u.size(); ++z) {
    const int low = std::countr_zero(z);
    const std::uint64_t rest = z & (z - 1);
    double e = u[rest];
    for (std::uint64_t b = rest; b; b &= b - 1)
      e += pair[static_cast<std::size_t>(low * n + std::countr_zero(b))];
    u[z] = e;
  }
  return u;
}

/// Evolves |0...0> under the pulse with Strang splitting
///   exp(-iD h/2) exp(-iΩ̄ Σσx h) exp(-iD h/2)
/// per step, pulse values taken at each step midpoint. Adjacent diagonal
/// half-steps are fused.
inline StateVector evolve(const Register& reg, const PulseSchedule& pulse, const EmulatorConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw EmulatorError("dt must be positive");
  const int n = reg.size();
  if (n < 1) throw EmulatorError("evolve: empty register");
  if (n > cfg.max_qubits)
    throw EmulatorError("evolve: " + std::to_string(n) + " atoms exceed the emulation cap of " +
                        std::to_string(cfg.max_qubits));
  const std::size_t dim = std::size_t{1} << n;
  const auto steps = static_cast<long>(std::max(1.0, std::round(pulse.duration / cfg.dt)));
  const double h = pulse.duration / static_cast<double>(steps);
  const double rabi_scale = cfg.half_rabi ? 0.5 : 1.0;

  const auto u = interaction_energies(reg, cfg.c6);
  std::vector<int> pop(dim);
  for (std::size_t z = 0; z < dim; ++z) pop[z] = std::popcount(z);
  std::vector<std::complex<double>> u_half(dim), u_full(dim);
  for (std::size_t z = 0; z < dim; ++z) {
    u_half[z] = std::polar(1.0, -u[z] * h / 2);
    u_full[z] = std::polar(1.0, -u[z] * h);
  }

  StateVector psi{n, std::vector<std::complex<double>>(dim)};
  psi.amplitudes[0] = 1.0;
  auto& a = psi.amplitudes;
  std::vector<std::complex<double>> detune(static_cast<std::size_t>(n + 1));

  // Applies exp(+i (δ-sum) pop · h/2) · interaction phase, where δ-sum is the
  // sum of the midpoint detunings of the two fused half-steps.
  auto apply_diagonal = [&](double delta_sum, const std::vector<std::complex<double>>& uphase) {
    for (int k = 0; k <= n; ++k) detune[static_cast<std::size_t>(k)] = std::polar(1.0, delta_sum * k * h / 2);
    for (std::size_t z = 0; z < dim; ++z) a[z] *= detune[static_cast<std::size_t>(pop[z])] * uphase[z];
  };

  double prev_delta = 0.0;
  for (long k = 0; k < steps; ++k) {
    const double t_mid = (static_cast<double>(k) + 0.5) * h;
    const double om = rabi_scale * pulse.omega(t_mid);
    const double de = pulse.delta(t_mid);
    if (k == 0) apply_diagonal(de, u_half);
    else apply_diagonal(prev_delta + de, u_full);
    if (om != 0.0) {
      const double c = std::cos(om * h), s = std::sin(om * h);
      const std::complex<double> mis(0.0, -s);
      for (int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t z = 0; z < dim; ++z) {
          if (z & bit) continue;
          const auto x0 = a[z], x1 = a[z | bit];
          a[z] = c * x0 + mis * x1;
          a[z | bit] = mis * x0 + c * x1;
        }
      }
    }
    prev_delta = de;
  }
  apply_diagonal(prev_delta, u_half);
  return psi;
}

/// Measured bitstrings; character i of a key is the occupation of atom i.
struct SampleSet {
  std::map<std::string, int> counts;
  int total = 0;
};

inline std::string basis_to_bitstring(std::uint64_t z, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((z >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

inline VertexSet bitstring_to_set(const std::string& bits) {
  VertexSet s;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] == '1') s.insert(static_cast<int>(i));
  return s;
}

inline SampleSet sample(const StateVector& psi, int shots, std::uint64_t seed) {
  if (shots < 0) throw EmulatorError("shots must be non-negative");
  std::vector<double> probs(psi.amplitudes.size());
  for (std::size_t z = 0; z < probs.size(); ++z) probs[z] = std::norm(psi.amplitudes[z]);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::uint64_t> dist(probs.begin(), probs.end());
  std::map<std::uint64_t, int> raw;
  for (int s = 0; s < shots; ++s) ++raw[dist(rng)];
  SampleSet out;
  out.total = shots;
  for (auto [z, c] : raw) out.counts[basis_to_bitstring(z, psi.n)] = c;
  return out;
}

inline void write_pulse_csv(std::ostream& out, const PulseSchedule& pulse) {
  std::set<double> ts;
  for (auto& [t, v] : pulse.omega.breakpoints()) ts.insert(t);
  for (auto& [t, v] : pulse.delta.breakpoints()) ts.insert(t);
  out << "t_us,omega_rad_per_us,delta_rad_per_us\n";
  for (double t : ts) out << t << ',' << pulse.omega(t) << ',' << pulse.delta(t) << '\n';
}

inline void write_samples_csv(std::ostream& out, const SampleSet& s) {
  out << "bitstring,count\n";
  for (const auto& [bits, c] : s.counts) out << bits << ',' << c << '\n';
}

}  // namespace qcbp
