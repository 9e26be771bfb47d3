#pragma once

#include <cstdint>
#include <vector>

#include "spinmode/models.hpp"

// Echo interferometry on the coupled spin: pi/2 - couple T - pi - wait T -
// pi/2(phi) with the analysis phase phi on the closing pulse, plus the
// time-resolved variant that stops after the opening pulse and tracks spin
// expectations under the coupled evolution.  Projective readout is binomial
// with counter-based seeding, so a fixed (seed, setting) pair is reproducible
// regardless of evaluation order.

namespace spinmode {

enum class PulseKind { half_pi, pi, couple, wait };

struct PulseSpec {
  PulseKind kind = PulseKind::wait;
  double phase = 0.0;     // rad, spin pulses only
  double duration = 0.0;  // s, evolution segments only
};

enum class Observable { sigma_x, sigma_y, sigma_z };
enum class Frame { lab, rotating };

Observable observable_from_string(const std::string& name);
std::string to_string(Observable o);

// exp(-i theta/2 (sigma_x cos(phase) + sigma_y sin(phase)))
Matrix spin_rotation(double theta, double phase);

// spin pulse on the composite state; kind must be half_pi or pi
Matrix apply_spin_pulse(const Matrix& state, PulseKind kind, double phase);

std::vector<PulseSpec> echo_sequence(double arm, double phase, bool couple_first = true);
double sequence_duration(const std::vector<PulseSpec>& pulses);

struct MeasurementRecord {
  double setting = 0.0;  // analysis phase (rad) or time (s)
  int repetitions = 0;
  int up_count = 0;
  double estimate = 0.0;  // 2 up/reps - 1
};

// binomial readout of a sigma-type expectation in [-1, 1]
MeasurementRecord sample_projective(double expectation_value, int repetitions,
                                    std::uint64_t seed, std::uint64_t stream);

// P(up) after rotating the requested observable onto sigma_z
double measured_up_probability(const Matrix& spin_state, Observable obs);

class SequenceEngine {
 public:
  SequenceEngine(const ModelParams& p, Model m);

  const ModelParams& params() const { return params_; }
  // bare spin frequency of the exchange picture (mapped for ion variants)
  double reference_frequency() const { return reference_; }

  Matrix initial_state() const;  // |down><down| (x) thermal mode
  // applies the pulses in order; max_tail, when given, accumulates the
  // worst top-two-level mode population after each evolution segment
  Matrix run(const std::vector<PulseSpec>& pulses, Matrix state,
             double* max_tail = nullptr) const;

  Matrix reduced(const Matrix& state) const;

 private:
  ModelParams params_;
  double reference_;
  Propagator coupled_;
  Propagator free_;
};

struct PhaseScanResult {
  std::vector<double> phases;
  std::vector<double> up_probability;      // exact values
  std::vector<MeasurementRecord> records;  // empty when repetitions == 0
  double arm_duration = 0.0;
  double max_tail = 0.0;
};

// phase scan of the full echo sequence; arm duration is one period of the
// (mapped) exchange parameters
PhaseScanResult ramsey_time_average(const ModelParams& p, Model m,
                                    const std::vector<double>& phases,
                                    int repetitions, std::uint64_t seed);

struct ObservableSeries {
  Observable observable = Observable::sigma_z;
  std::vector<double> exact;
  std::vector<MeasurementRecord> records;
};

struct TimeScanResult {
  std::vector<double> times;
  std::vector<ObservableSeries> series;
  double max_tail = 0.0;
};

// stream_offset shifts the sampling stream index of times[0]; slicing a grid
// across workers with matching offsets reproduces the unsliced draw exactly
TimeScanResult ramsey_time_resolved(const ModelParams& p, Model m,
                                    const std::vector<double>& times,
                                    const std::vector<Observable>& observables,
                                    int repetitions, std::uint64_t seed,
                                    Frame frame = Frame::lab,
                                    std::uint64_t stream_offset = 0);

}  // namespace spinmode
