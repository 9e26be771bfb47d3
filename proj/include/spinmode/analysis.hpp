#pragma once

#include <array>
#include <vector>

#include "spinmode/experiments.hpp"
#include "spinmode/renorm.hpp"

// Estimators mirroring the measurement pipeline: the negative-cosine fringe
// fit, the phase-to-average-shift conversion, the zero-crossing Larmor
// tracker, and the side-by-side exchange/ion comparison.

namespace spinmode {

struct CosineFit {
  double contrast = 0.0;
  double phase = 0.0;  // rad, in (-pi, pi]
  double rms_residual = 0.0;
};

// least squares of up-probabilities against c + a cos(phi) + b sin(phi),
// read back as 1/2 - (C/2) cos(phi + phase); needs >= 3 distinct phases
CosineFit fit_negative_cosine(const std::vector<double>& phases,
                              const std::vector<double>& up_probability);

// phase / period, valid only while the predicted per-period phase stays
// inside (-pi, pi); throws when the wrap-around is ambiguous
double average_shift_from_phase(const CosineFit& fit, const ModelParams& p);

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

struct LarmorEstimate {
  std::vector<double> crossings;  // cluster-merged zero crossings
  std::vector<double> times;      // interval midpoints
  std::vector<double> omega;      // pi / interval, rad/s
};

// zero-crossing frequency tracker; crossings closer than a quarter hint
// period collapse to their median.  Needs >= 20 samples per hint period.
LarmorEstimate larmor_zero_crossings(const TimeSeries& series, double omega_hint);

struct ModelComparison {
  std::vector<double> times;
  std::array<std::vector<double>, 3> jc;  // <sigma_x>, <sigma_y>, <sigma_z>
  std::array<std::vector<double>, 3> ti;
  std::array<std::vector<double>, 3> difference;
  std::vector<double> distance;  // trace distance of the reduced states
  double max_distance = 0.0;
};

// evolves the same prepared spin (x) thermal mode state under the ion model
// and its mapped exchange partner; the ion side is conjugated by the exact
// carrier dressing so the two pictures share one frame.  duration <= 0 means
// one period of the mapped parameters.
ModelComparison compare_models(const ModelParams& p, Model variant,
                               double duration, int steps);

}  // namespace spinmode
