#include "spinmode/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinmode {

namespace {
constexpr cplx kI{0.0, 1.0};
}

CosineFit fit_negative_cosine(const std::vector<double>& phases,
                              const std::vector<double>& up_probability) {
  if (phases.size() != up_probability.size())
    throw std::invalid_argument("fit_negative_cosine: grid size mismatch");
  std::vector<double> distinct = phases;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw std::invalid_argument("fit_negative_cosine: need at least 3 distinct phases");

  const Eigen::Index n = Eigen::Index(phases.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(phases[i]);
    design(i, 2) = std::sin(phases[i]);
    y(i) = up_probability[i];
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);
  const double a = coef(1), b = coef(2);

  CosineFit fit;
  fit.contrast = 2.0 * std::hypot(a, b);
  fit.phase = std::atan2(b, -a);
  fit.rms_residual = std::sqrt((design * coef - y).squaredNorm() / double(n));
  return fit;
}

double average_shift_from_phase(const CosineFit& fit, const ModelParams& p) {
  const double t = period(p);
  const double predicted = average_shift_vacuum(p) * t;
  if (std::abs(predicted) >= std::numbers::pi)
    throw std::runtime_error(
        "average_shift_from_phase: per-period phase exceeds pi, wrap-around ambiguous");
  return fit.phase / t;
}

LarmorEstimate larmor_zero_crossings(const TimeSeries& series, double omega_hint) {
  if (!(omega_hint > 0.0))
    throw std::invalid_argument("larmor_zero_crossings: positive frequency hint required");
  const std::size_t n = series.times.size();
  if (n != series.values.size() || n < 2)
    throw std::invalid_argument("larmor_zero_crossings: degenerate series");
  const double hint_period = 2.0 * std::numbers::pi / omega_hint;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dt = series.times[i + 1] - series.times[i];
    if (!(dt > 0.0)) throw std::invalid_argument("larmor_zero_crossings: times must increase");
    if (dt > hint_period / 20.0 * (1.0 + 1e-9))
      throw std::invalid_argument(
          "larmor_zero_crossings: sampling coarser than 20 points per hint period");
  }

  std::vector<double> raw;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = series.values[i], b = series.values[i + 1];
    if (a == 0.0) {
      raw.push_back(series.times[i]);
    } else if ((a < 0.0) != (b < 0.0) && b != 0.0) {
      raw.push_back(series.times[i] +
                    (series.times[i + 1] - series.times[i]) * a / (a - b));
    }
  }
  if (series.values[n - 1] == 0.0) raw.push_back(series.times[n - 1]);

  // ripple can split one physical crossing into a tight group; merge groups
  // closer than a quarter hint period into their median
  LarmorEstimate out;
  const double radius = 0.25 * hint_period;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i + 1;
    while (j < raw.size() && raw[j] - raw[j - 1] < radius) ++j;
    const std::size_t len = j - i;
    const double merged = (len % 2 == 1)
                              ? raw[i + len / 2]
                              : 0.5 * (raw[i + len / 2 - 1] + raw[i + len / 2]);
    out.crossings.push_back(merged);
    i = j;
  }
  if (out.crossings.size() < 2)
    throw std::runtime_error("larmor_zero_crossings: fewer than two crossings, cannot form an interval");

  for (std::size_t k = 0; k + 1 < out.crossings.size(); ++k) {
    out.times.push_back(0.5 * (out.crossings[k] + out.crossings[k + 1]));
    out.omega.push_back(std::numbers::pi / (out.crossings[k + 1] - out.crossings[k]));
  }
  return out;
}

ModelComparison compare_models(const ModelParams& p, Model variant,
                               double duration, int steps) {
  if (steps < 1) throw std::invalid_argument("compare_models: steps >= 1 required");

  ModelParams mapped = p;
  Matrix dressing = identity(2);
  switch (variant) {
    case Model::jc:
      break;
    case Model::ti_rsb:
      // the sideband-only ion model is the exchange model verbatim
      mapped = map_ti_to_jc(p);
      mapped.omega = p.omega_star;
      break;
    case Model::ti_full:
    case Model::ti_ld: {
      mapped = map_ti_to_jc(p);
      const double theta_c = std::atan2(p.omega_rabi, p.omega_star);
      Matrix phase_gate(2, 2);
      phase_gate << std::exp(kI * std::numbers::pi / 4.0), 0.0, 0.0,
          std::exp(-kI * std::numbers::pi / 4.0);
      dressing = spin_rotation(theta_c, 0.5 * std::numbers::pi) * phase_gate;
      break;
    }
  }
  if (duration <= 0.0) duration = period(mapped);

  const Propagator u_jc(jc_hamiltonian(mapped));
  const Propagator u_ti(coupled_hamiltonian(variant, p));
  const Matrix rho_mode = thermal_mode_state(p);

  Matrix down = Matrix::Zero(2, 2);
  down(1, 1) = 1.0;
  const Matrix prep = spin_rotation(0.5 * std::numbers::pi, 0.0);
  const Matrix spin0 = prep * down * prep.adjoint();
  const Matrix jc0 = tensor(spin0, rho_mode);
  const Matrix ti0 = tensor(dressing * spin0 * dressing.adjoint(), rho_mode);

  const std::array<Matrix, 3> paulis{sigma_x(), sigma_y(), sigma_z()};
  ModelComparison out;
  for (int k = 0; k <= steps; ++k) {
    const double t = duration * double(k) / double(steps);
    const Matrix r_jc = partial_trace_mode(u_jc.evolve(jc0, t), p.n_max);
    const Matrix r_ti = dressing.adjoint() *
                        partial_trace_mode(u_ti.evolve(ti0, t), p.n_max) * dressing;
    out.times.push_back(t);
    for (int j = 0; j < 3; ++j) {
      const double ej = expectation(paulis[j], r_jc);
      const double et = expectation(paulis[j], r_ti);
      out.jc[j].push_back(ej);
      out.ti[j].push_back(et);
      out.difference[j].push_back(et - ej);
    }
    out.distance.push_back(trace_distance(r_jc, r_ti));
  }
  out.max_distance = *std::max_element(out.distance.begin(), out.distance.end());
  return out;
}

}  // namespace spinmode
