#pragma once

#include <array>
#include <optional>
#include <vector>

#include "spinmode/models.hpp"

// Exact dynamical-map reconstruction for the reduced spin, the
// time-convolutionless generator obtained by differentiating the map, and
// its unique split into an emergent Hamiltonian plus a canonical dissipator
// (traceless orthonormal jumps).  Maps and generators live in the hermitian
// operator basis {I, sigma_x, sigma_y, sigma_z}/sqrt(2), where both are real
// 4x4 matrices acting on (1, r_x, r_y, r_z)/sqrt(2).

namespace spinmode {

struct DynamicalMap {
  double time = 0.0;
  Eigen::Matrix4d matrix;
};

class MapReconstructor {
 public:
  MapReconstructor(const Matrix& h_total, const Matrix& rho_mode);

  DynamicalMap map_at(double t) const;
  std::vector<DynamicalMap> uniform_grid(double t0, double t1, int steps) const;

 private:
  Propagator propagator_;
  std::array<Matrix, 4> basis_with_mode_;  // G_beta (x) rho_E
  int n_max_;
};

DynamicalMap reconstruct_map(const Matrix& h_total, const Matrix& rho_mode, double t);

// d(Lambda)/dt Lambda^{-1} by a five-point stencil on a uniform grid;
// needs index in [2, size-3].  nullopt when Lambda is too ill-conditioned
// to invert (singular sample).
std::optional<Eigen::Matrix4d> generator(const std::vector<DynamicalMap>& maps,
                                         std::size_t index,
                                         double max_condition = 1e8);

struct GeneratorSplit {
  double time = 0.0;
  Eigen::Vector3d field;              // K_S = field . sigma / 2
  Eigen::Matrix2cd hamiltonian;       // K_S itself
  Eigen::Matrix3cd kossakowski;       // hermitian, possibly indefinite
  std::array<double, 3> rates;        // canonical rates, ascending
  std::array<Eigen::Matrix2cd, 3> jumps;

  double omega_tilde() const { return field(2); }
};

GeneratorSplit minimal_dissipation_split(const Eigen::Matrix4d& g, double time = 0.0);

// inverse direction: Bloch-space generator from a field and a Kossakowski
// matrix in the {sigma_x, sigma_y, sigma_z} jump basis
Eigen::Matrix4d bloch_generator(const Eigen::Vector3d& field,
                                const Eigen::Matrix3cd& kossakowski);

// sigma_z / sigma_+ / sigma_- channel coefficients of the generator
struct JcForm {
  double omega_tilde = 0.0;
  double gamma_z = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double residual = 0.0;  // magnitude of off-form entries, 0 for exchange dynamics
};

Eigen::Matrix4d assemble_jc_generator(const JcForm& f);
JcForm jc_coefficients(const GeneratorSplit& split);

struct LarmorProfile {
  std::vector<double> times;
  std::vector<double> omega;  // emergent spin frequency, rad/s
  std::vector<double> singular_times;
};

// omega_tilde(t) along a uniform map grid (interior points of the stencil)
LarmorProfile larmor_frequency_exact(const std::vector<DynamicalMap>& maps,
                                     double max_condition = 1e8);

}  // namespace spinmode
