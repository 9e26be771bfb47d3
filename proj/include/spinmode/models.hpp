#pragma once

#include <string>

#include "spinmode/hilbert.hpp"

// Hamiltonian builders for the qubit-boson family: the exchange (JC) model
// and the driven trapped-ion model in three truncations (full displacement,
// first order in eta, resonant sideband only), plus the parameter map that
// connects them.

namespace spinmode {

struct ModelParams {
  double omega = 0.0;       // spin splitting (exchange model), rad/s
  double omega_m = 0.0;     // mode frequency, rad/s
  double g = 0.0;           // exchange coupling, rad/s
  double omega_star = 0.0;  // ion internal splitting, rad/s
  double omega_rabi = 0.0;  // carrier Rabi frequency, rad/s
  double eta = 0.0;         // Lamb-Dicke parameter
  double nbar = 0.0;        // thermal mean occupation of the mode
  int n_max = 30;           // Fock cutoff, levels 0..n_max

  double detuning() const { return omega_m - omega; }

  // inverse temperature in s/rad; nbar = 0 maps to +infinity
  double beta() const;
  void set_beta(double beta);

  void validate_common() const;
  void validate_exchange() const;
  void validate_ion() const;
};

enum class Model { jc, ti_full, ti_ld, ti_rsb };

Model model_from_string(const std::string& name);
std::string to_string(Model m);

Matrix jc_hamiltonian(const ModelParams& p);
Matrix ti_hamiltonian_full(const ModelParams& p);
Matrix ti_hamiltonian_ld(const ModelParams& p);
Matrix ti_hamiltonian_rsb(const ModelParams& p);

Matrix coupled_hamiltonian(Model m, const ModelParams& p);
// same model with the coupling switched off (g = 0 resp. omega_rabi = 0)
Matrix bare_hamiltonian(Model m, const ModelParams& p);

// omega = sqrt(omega_star^2 + omega_rabi^2), g = eta*omega_rabi/2; all other
// fields are copied through
ModelParams map_ti_to_jc(const ModelParams& p);

// Gibbs state of the truncated mode, renormalised on the retained levels.
// Throws if the truncated tail would carry more than 1e-8 probability.
Matrix thermal_mode_state(const ModelParams& p);

}  // namespace spinmode
