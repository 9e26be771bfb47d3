#include "spinmode/models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinmode {

namespace {
constexpr cplx kI{0.0, 1.0};
constexpr double kTailBudget = 1e-8;
}  // namespace

double ModelParams::beta() const {
  if (nbar == 0.0) return std::numeric_limits<double>::infinity();
  return std::log1p(1.0 / nbar) / omega_m;
}

void ModelParams::set_beta(double beta) {
  if (beta <= 0.0) throw std::invalid_argument("ModelParams: beta must be positive");
  if (std::isinf(beta)) {
    nbar = 0.0;
    return;
  }
  nbar = 1.0 / std::expm1(beta * omega_m);
}

void ModelParams::validate_common() const {
  if (!(omega_m > 0.0)) throw std::invalid_argument("ModelParams: omega_m must be positive");
  if (!(nbar >= 0.0)) throw std::invalid_argument("ModelParams: nbar must be non-negative");
  if (n_max < 2) throw std::invalid_argument("ModelParams: n_max >= 2 required");
}

void ModelParams::validate_exchange() const {
  validate_common();
  if (!(omega > 0.0)) throw std::invalid_argument("ModelParams: omega must be positive");
  if (!(g >= 0.0)) throw std::invalid_argument("ModelParams: g must be non-negative");
}

void ModelParams::validate_ion() const {
  validate_common();
  if (!(omega_star > 0.0)) throw std::invalid_argument("ModelParams: omega_star must be positive");
  if (!(omega_rabi >= 0.0)) throw std::invalid_argument("ModelParams: omega_rabi must be non-negative");
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("ModelParams: eta in [0,1) required");
}

Model model_from_string(const std::string& name) {
  if (name == "jc") return Model::jc;
  if (name == "ti_full") return Model::ti_full;
  if (name == "ti_ld") return Model::ti_ld;
  if (name == "ti_rsb") return Model::ti_rsb;
  throw std::invalid_argument("unknown model '" + name + "' (expected jc, ti_full, ti_ld, ti_rsb)");
}

std::string to_string(Model m) {
  switch (m) {
    case Model::jc: return "jc";
    case Model::ti_full: return "ti_full";
    case Model::ti_ld: return "ti_ld";
    case Model::ti_rsb: return "ti_rsb";
  }
  throw std::logic_error("to_string(Model): bad enum");
}

namespace {

Matrix bare_part(double spin_freq, const ModelParams& p) {
  const int dm = p.n_max + 1;
  return 0.5 * spin_freq * tensor(sigma_z(), identity(dm)) +
         p.omega_m * tensor(identity(2), number_operator(p.n_max));
}

Matrix exchange_coupling(double strength, const ModelParams& p) {
  return strength * (tensor(sigma_plus(), annihilation(p.n_max)) +
                     tensor(sigma_minus(), creation(p.n_max)));
}

Matrix carrier_coupling(const Matrix& c, const ModelParams& p) {
  return 0.5 * p.omega_rabi *
         (tensor(sigma_plus(), c) + tensor(sigma_minus(), c.adjoint()));
}

}  // namespace

Matrix jc_hamiltonian(const ModelParams& p) {
  p.validate_exchange();
  return bare_part(p.omega, p) + exchange_coupling(p.g, p);
}

Matrix ti_hamiltonian_full(const ModelParams& p) {
  p.validate_ion();
  return bare_part(p.omega_star, p) +
         carrier_coupling(displacement_exponential(p.eta, p.n_max), p);
}

Matrix ti_hamiltonian_ld(const ModelParams& p) {
  p.validate_ion();
  const Matrix x = annihilation(p.n_max) + creation(p.n_max);
  const Matrix c = identity(p.n_max + 1) + kI * p.eta * x;
  return bare_part(p.omega_star, p) + carrier_coupling(c, p);
}

Matrix ti_hamiltonian_rsb(const ModelParams& p) {
  p.validate_ion();
  return bare_part(p.omega_star, p) + exchange_coupling(0.5 * p.eta * p.omega_rabi, p);
}

Matrix coupled_hamiltonian(Model m, const ModelParams& p) {
  switch (m) {
    case Model::jc: return jc_hamiltonian(p);
    case Model::ti_full: return ti_hamiltonian_full(p);
    case Model::ti_ld: return ti_hamiltonian_ld(p);
    case Model::ti_rsb: return ti_hamiltonian_rsb(p);
  }
  throw std::logic_error("coupled_hamiltonian: bad enum");
}

Matrix bare_hamiltonian(Model m, const ModelParams& p) {
  ModelParams q = p;
  if (m == Model::jc)
    q.g = 0.0;
  else
    q.omega_rabi = 0.0;
  return coupled_hamiltonian(m, q);
}

ModelParams map_ti_to_jc(const ModelParams& p) {
  p.validate_ion();
  ModelParams q = p;
  q.omega = std::hypot(p.omega_star, p.omega_rabi);
  q.g = 0.5 * p.eta * p.omega_rabi;
  return q;
}

Matrix thermal_mode_state(const ModelParams& p) {
  p.validate_common();
  const int dm = p.n_max + 1;
  Matrix rho = Matrix::Zero(dm, dm);
  if (p.nbar == 0.0) {
    rho(0, 0) = 1.0;
    return rho;
  }
  const double q = p.nbar / (1.0 + p.nbar);
  const double tail = std::pow(q, p.n_max + 1);  // exact mass above the cutoff
  if (tail > kTailBudget)
    throw std::runtime_error("thermal_mode_state: cutoff keeps less than 1 - 1e-8 of the Gibbs weight, raise n_max");
  double norm = 0.0;
  for (int n = 0; n < dm; ++n) norm += std::pow(q, n);
  for (int n = 0; n < dm; ++n) rho(n, n) = std::pow(q, n) / norm;
  return rho;
}

}  // namespace spinmode
