#include "spinmode/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinmode/renorm.hpp"
#include "spinmode/rng.hpp"

namespace spinmode {

namespace {
constexpr cplx kI{0.0, 1.0};
constexpr double kTailLimit = 1e-6;

void check_tail(double tail) {
  if (tail > kTailLimit)
    throw std::runtime_error("mode cutoff violated: top-two-level population " +
                             std::to_string(tail) + ", raise n_max");
}
}  // namespace

Observable observable_from_string(const std::string& name) {
  if (name == "sigma_x") return Observable::sigma_x;
  if (name == "sigma_y") return Observable::sigma_y;
  if (name == "sigma_z") return Observable::sigma_z;
  throw std::invalid_argument("unknown observable '" + name + "'");
}

std::string to_string(Observable o) {
  switch (o) {
    case Observable::sigma_x: return "sigma_x";
    case Observable::sigma_y: return "sigma_y";
    case Observable::sigma_z: return "sigma_z";
  }
  throw std::logic_error("to_string(Observable): bad enum");
}

Matrix spin_rotation(double theta, double phase) {
  const Matrix axis = std::cos(phase) * sigma_x() + std::sin(phase) * sigma_y();
  const double half = 0.5 * theta;
  return std::cos(half) * identity(2) - kI * std::sin(half) * axis;
}

Matrix apply_spin_pulse(const Matrix& state, PulseKind kind, double phase) {
  double theta = 0.0;
  switch (kind) {
    case PulseKind::half_pi: theta = 0.5 * std::numbers::pi; break;
    case PulseKind::pi: theta = std::numbers::pi; break;
    default:
      throw std::invalid_argument("apply_spin_pulse: evolution segments are not pulses");
  }
  const Eigen::Index dm = state.rows() / 2;
  const Matrix u = tensor(spin_rotation(theta, phase), identity(dm));
  return u * state * u.adjoint();
}

std::vector<PulseSpec> echo_sequence(double arm, double phase, bool couple_first) {
  if (!(arm > 0.0)) throw std::invalid_argument("echo_sequence: arm duration must be positive");
  const PulseKind first = couple_first ? PulseKind::couple : PulseKind::wait;
  const PulseKind second = couple_first ? PulseKind::wait : PulseKind::couple;
  return {{PulseKind::half_pi, 0.0, 0.0},
          {first, 0.0, arm},
          {PulseKind::pi, 0.0, 0.0},
          {second, 0.0, arm},
          {PulseKind::half_pi, phase, 0.0}};
}

double sequence_duration(const std::vector<PulseSpec>& pulses) {
  double total = 0.0;
  for (const auto& p : pulses) total += p.duration;
  return total;
}

MeasurementRecord sample_projective(double expectation_value, int repetitions,
                                    std::uint64_t seed, std::uint64_t stream) {
  if (repetitions < 1) throw std::invalid_argument("sample_projective: repetitions >= 1");
  if (std::abs(expectation_value) > 1.0 + 1e-9)
    throw std::invalid_argument("sample_projective: expectation outside [-1, 1]");
  const double p = std::clamp(0.5 * (1.0 + expectation_value), 0.0, 1.0);
  MeasurementRecord rec;
  rec.repetitions = repetitions;
  for (int r = 0; r < repetitions; ++r)
    if (rng::uniform01(seed, stream, std::uint64_t(r)) < p) ++rec.up_count;
  rec.estimate = 2.0 * double(rec.up_count) / double(repetitions) - 1.0;
  return rec;
}

double measured_up_probability(const Matrix& spin_state, Observable obs) {
  Matrix rho = spin_state;
  switch (obs) {
    case Observable::sigma_x: {
      // sigma_x -> sigma_z under a pi/2 pulse about the -y axis
      const Matrix u = spin_rotation(0.5 * std::numbers::pi, 1.5 * std::numbers::pi);
      rho = u * rho * u.adjoint();
      break;
    }
    case Observable::sigma_y: {
      const Matrix u = spin_rotation(0.5 * std::numbers::pi, 0.0);
      rho = u * rho * u.adjoint();
      break;
    }
    case Observable::sigma_z: break;
  }
  return rho(0, 0).real();
}

SequenceEngine::SequenceEngine(const ModelParams& p, Model m)
    : params_(p),
      reference_(m == Model::jc ? p.omega : map_ti_to_jc(p).omega),
      coupled_(coupled_hamiltonian(m, p)),
      free_(bare_hamiltonian(m, p)) {}

Matrix SequenceEngine::initial_state() const {
  Matrix down = Matrix::Zero(2, 2);
  down(1, 1) = 1.0;
  return tensor(down, thermal_mode_state(params_));
}

Matrix SequenceEngine::run(const std::vector<PulseSpec>& pulses, Matrix state,
                           double* max_tail) const {
  for (const auto& p : pulses) {
    switch (p.kind) {
      case PulseKind::half_pi:
      case PulseKind::pi:
        state = apply_spin_pulse(state, p.kind, p.phase);
        continue;
      case PulseKind::couple:
        state = coupled_.evolve(state, p.duration);
        break;
      case PulseKind::wait:
        state = free_.evolve(state, p.duration);
        break;
    }
    const double tail = mode_tail_population(state, params_.n_max);
    check_tail(tail);
    if (max_tail) *max_tail = std::max(*max_tail, tail);
  }
  return state;
}

Matrix SequenceEngine::reduced(const Matrix& state) const {
  return partial_trace_mode(state, params_.n_max);
}

PhaseScanResult ramsey_time_average(const ModelParams& p, Model m,
                                    const std::vector<double>& phases,
                                    int repetitions, std::uint64_t seed) {
  if (phases.empty()) throw std::invalid_argument("ramsey_time_average: empty phase grid");
  const SequenceEngine engine(p, m);
  const ModelParams mapped = (m == Model::jc) ? p : map_ti_to_jc(p);
  PhaseScanResult out;
  out.arm_duration = period(mapped);
  out.phases = phases;

  // the arms and the echo pulse do not depend on the analysis phase
  const std::vector<PulseSpec> body = {{PulseKind::half_pi, 0.0, 0.0},
                                       {PulseKind::couple, 0.0, out.arm_duration},
                                       {PulseKind::pi, 0.0, 0.0},
                                       {PulseKind::wait, 0.0, out.arm_duration}};
  const Matrix echoed = engine.run(body, engine.initial_state(), &out.max_tail);

  out.up_probability.reserve(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const Matrix closed = apply_spin_pulse(echoed, PulseKind::half_pi, phases[i]);
    const double p_up = engine.reduced(closed)(0, 0).real();
    out.up_probability.push_back(p_up);
    if (repetitions > 0) {
      auto rec = sample_projective(2.0 * p_up - 1.0, repetitions, seed, std::uint64_t(i));
      rec.setting = phases[i];
      out.records.push_back(rec);
    }
  }
  return out;
}

TimeScanResult ramsey_time_resolved(const ModelParams& p, Model m,
                                    const std::vector<double>& times,
                                    const std::vector<Observable>& observables,
                                    int repetitions, std::uint64_t seed, Frame frame,
                                    std::uint64_t stream_offset) {
  if (times.empty() || observables.empty())
    throw std::invalid_argument("ramsey_time_resolved: empty time or observable grid");
  const SequenceEngine engine(p, m);
  TimeScanResult out;
  out.times = times;
  out.series.resize(observables.size());
  for (std::size_t j = 0; j < observables.size(); ++j)
    out.series[j].observable = observables[j];

  const Matrix prepared =
      apply_spin_pulse(engine.initial_state(), PulseKind::half_pi, 0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Matrix state =
        engine.run({{PulseKind::couple, 0.0, times[i]}}, prepared, &out.max_tail);
    Matrix spin = engine.reduced(state);
    if (frame == Frame::rotating) {
      const Matrix rot = hermitian_propagator(-0.5 * engine.reference_frequency() *
                                                  sigma_z(), times[i]);
      spin = rot * spin * rot.adjoint();
    }
    for (std::size_t j = 0; j < observables.size(); ++j) {
      const double p_up = measured_up_probability(spin, observables[j]);
      out.series[j].exact.push_back(2.0 * p_up - 1.0);
      if (repetitions > 0) {
        auto rec = sample_projective(
            2.0 * p_up - 1.0, repetitions, seed,
            (stream_offset + i) * observables.size() + j);
        rec.setting = times[i];
        out.series[j].records.push_back(rec);
      }
    }
  }
  return out;
}

}  // namespace spinmode
