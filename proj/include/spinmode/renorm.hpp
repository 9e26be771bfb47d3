#pragma once

#include <optional>
#include <vector>

#include "spinmode/models.hpp"

// Closed forms for the emergent spin-frequency renormalisation of the
// exchange model: the decoherence function gamma(t) for a thermal mode, the
// time-dependent shift -Im{gamma'/gamma}, its vacuum specialisation and
// period average, the dispersive limit and the dressed-level picture.

namespace spinmode {

double rabi_frequency(int n, const ModelParams& p);  // sqrt(Delta^2 + 4 g^2 n)

// period of the vacuum shift, 2 pi / Omega_1
double period(const ModelParams& p);

// stay amplitude of the n-excitation doublet; c(0,t) == 1 identically
cplx coeff_c(int n, double t, const ModelParams& p);
cplx coeff_c_dot(int n, double t, const ModelParams& p);

struct GammaSeries {
  cplx value;
  cplx derivative;
  int terms;  // summed Boltzmann terms before the geometric tail fell below 1e-15
};

GammaSeries gamma_series(double t, const ModelParams& p);
cplx gamma_thermal(double t, const ModelParams& p);
cplx gamma_thermal_derivative(double t, const ModelParams& p);

// -Im{gamma'/gamma}; nullopt where |gamma| <= 1e-10 (singular sample)
std::optional<double> shift_thermal(double t, const ModelParams& p);

// vacuum closed form; requires Delta != 0, resonant case goes through
// shift_thermal with nbar = 0
double shift_vacuum(double t, const ModelParams& p);

// one-period average of the vacuum shift, -2 g^2 sign(Delta)/(|Delta| + Omega_1)
double average_shift_vacuum(const ModelParams& p);

// dispersive limit -g^2/Delta
double lamb_shift(const ModelParams& p);

struct DressedEnergies {
  double upper;  // (omega_m + omega + Omega_1)/2
  double lower;  // (omega_m + omega - Omega_1)/2
};

// one-excitation dressed levels measured from the ground level -omega/2
DressedEnergies dressed_energies(const ModelParams& p);

struct ShiftProfile {
  std::vector<double> times;   // samples with a finite shift
  std::vector<double> shift;   // rad/s, aligned with times
  std::vector<double> singular_times;
};

ShiftProfile shift_profile(const std::vector<double>& times, const ModelParams& p);

}  // namespace spinmode
