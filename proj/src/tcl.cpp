#include "spinmode/tcl.hpp"

#include <cmath>
#include <stdexcept>

namespace spinmode {

namespace {
constexpr cplx kI{0.0, 1.0};

std::array<Matrix, 4> pauli_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s * identity(2), s * sigma_x(), s * sigma_y(), s * sigma_z()};
}

double grid_spacing(const std::vector<DynamicalMap>& maps, std::size_t index) {
  const double h = maps[index].time - maps[index - 1].time;
  for (std::size_t k = index - 1; k <= index + 1; ++k) {
    const double step = maps[k + 1].time - maps[k].time;
    if (!(h > 0.0) || std::abs(step - h) > 1e-9 * h)
      throw std::invalid_argument("generator: stencil needs a uniform time grid");
  }
  return h;
}
}  // namespace

MapReconstructor::MapReconstructor(const Matrix& h_total, const Matrix& rho_mode)
    : propagator_(h_total), n_max_(int(rho_mode.rows()) - 1) {
  if (h_total.rows() != 2 * rho_mode.rows())
    throw std::invalid_argument("MapReconstructor: hamiltonian is not spin (x) mode sized");
  require_density_matrix(rho_mode);
  const auto basis = pauli_basis();
  for (int b = 0; b < 4; ++b) basis_with_mode_[b] = tensor(basis[b], rho_mode);
}

DynamicalMap MapReconstructor::map_at(double t) const {
  const auto basis = pauli_basis();
  const Matrix u = propagator_.unitary(t);
  DynamicalMap out{t, Eigen::Matrix4d::Zero()};
  for (int b = 0; b < 4; ++b) {
    const Matrix evolved = partial_trace_mode(u * basis_with_mode_[b] * u.adjoint(), n_max_);
    for (int a = 0; a < 4; ++a) {
      const cplx f = (basis[a] * evolved).trace();
      out.matrix(a, b) = f.real();
    }
  }
  return out;
}

std::vector<DynamicalMap> MapReconstructor::uniform_grid(double t0, double t1, int steps) const {
  if (steps < 1 || !(t1 > t0))
    throw std::invalid_argument("uniform_grid: need t1 > t0 and steps >= 1");
  std::vector<DynamicalMap> out;
  out.reserve(steps + 1);
  const double h = (t1 - t0) / steps;
  for (int k = 0; k <= steps; ++k) out.push_back(map_at(t0 + k * h));
  return out;
}

DynamicalMap reconstruct_map(const Matrix& h_total, const Matrix& rho_mode, double t) {
  return MapReconstructor(h_total, rho_mode).map_at(t);
}

std::optional<Eigen::Matrix4d> generator(const std::vector<DynamicalMap>& maps,
                                         std::size_t index, double max_condition) {
  if (index < 2 || index + 2 >= maps.size())
    throw std::invalid_argument("generator: five-point stencil needs two neighbours on each side");
  const double h = grid_spacing(maps, index);
  const Eigen::Matrix4d derivative =
      (-maps[index + 2].matrix + 8.0 * maps[index + 1].matrix -
       8.0 * maps[index - 1].matrix + maps[index - 2].matrix) /
      (12.0 * h);
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(maps[index].matrix,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(3) <= 0.0 || sv(0) / sv(3) > max_condition) return std::nullopt;
  return derivative * svd.solve(Eigen::Matrix4d::Identity());
}

GeneratorSplit minimal_dissipation_split(const Eigen::Matrix4d& g, double time) {
  GeneratorSplit out;
  out.time = time;
  const Eigen::Vector3d m = g.block<3, 1>(1, 0);
  const Eigen::Matrix3d a = g.block<3, 3>(1, 1);

  // unitary part: the antisymmetric component of the Bloch action
  const Eigen::Matrix3d anti = 0.5 * (a - a.transpose());
  out.field = Eigen::Vector3d(anti(2, 1), anti(0, 2), anti(1, 0));
  out.hamiltonian = 0.5 * (out.field(0) * sigma_x() + out.field(1) * sigma_y() +
                           out.field(2) * sigma_z());

  // dissipative part: symmetric component plus the translation
  const Eigen::Matrix3d sym = 0.5 * (a + a.transpose());
  Eigen::Matrix3d re_k = 0.5 * sym - (sym.trace() / 4.0) * Eigen::Matrix3d::Identity();
  Eigen::Matrix3d im_k = Eigen::Matrix3d::Zero();
  im_k(2, 1) = m(0) / 4.0;
  im_k(0, 2) = m(1) / 4.0;
  im_k(1, 0) = m(2) / 4.0;
  im_k -= Eigen::Matrix3d(im_k.transpose()).eval();
  out.kossakowski = re_k.cast<cplx>() + kI * im_k.cast<cplx>();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(out.kossakowski);
  const auto basis = pauli_basis();
  for (int k = 0; k < 3; ++k) {
    out.rates[k] = 2.0 * es.eigenvalues()(k);
    Eigen::Matrix2cd jump = Eigen::Matrix2cd::Zero();
    for (int j = 0; j < 3; ++j) jump += es.eigenvectors()(j, k) * basis[j + 1];
    out.jumps[k] = jump;
  }
  return out;
}

Eigen::Matrix4d bloch_generator(const Eigen::Vector3d& field,
                                const Eigen::Matrix3cd& kossakowski) {
  if ((kossakowski - kossakowski.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("bloch_generator: kossakowski matrix must be hermitian");
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  const Eigen::Matrix3d re_k = kossakowski.real();
  const Eigen::Matrix3d im_k = kossakowski.imag();
  Eigen::Matrix3d a = 2.0 * re_k - 2.0 * re_k.trace() * Eigen::Matrix3d::Identity();
  a(0, 1) -= field(2);
  a(1, 0) += field(2);
  a(1, 2) -= field(0);
  a(2, 1) += field(0);
  a(2, 0) -= field(1);
  a(0, 2) += field(1);
  g.block<3, 3>(1, 1) = a;
  g(1, 0) = 4.0 * im_k(2, 1);
  g(2, 0) = 4.0 * im_k(0, 2);
  g(3, 0) = 4.0 * im_k(1, 0);
  return g;
}

Eigen::Matrix4d assemble_jc_generator(const JcForm& f) {
  Eigen::Matrix3cd k = Eigen::Matrix3cd::Zero();
  k(0, 0) = k(1, 1) = cplx(0.25 * (f.gamma_plus + f.gamma_minus), 0.0);
  k(2, 2) = f.gamma_z;
  k(1, 0) = kI * 0.25 * (f.gamma_plus - f.gamma_minus);
  k(0, 1) = -k(1, 0);
  return bloch_generator(Eigen::Vector3d(0.0, 0.0, f.omega_tilde), k);
}

JcForm jc_coefficients(const GeneratorSplit& split) {
  const auto& k = split.kossakowski;
  JcForm f;
  f.omega_tilde = split.field(2);
  f.gamma_z = k(2, 2).real();
  f.gamma_plus = k(0, 0).real() + k(1, 1).real() + 2.0 * k(1, 0).imag();
  f.gamma_minus = k(0, 0).real() + k(1, 1).real() - 2.0 * k(1, 0).imag();
  f.residual = std::abs(split.field(0)) + std::abs(split.field(1)) +
               std::abs(k(0, 0) - k(1, 1)) + std::abs(k(1, 0).real()) +
               std::abs(k(2, 0)) + std::abs(k(2, 1));
  return f;
}

LarmorProfile larmor_frequency_exact(const std::vector<DynamicalMap>& maps,
                                     double max_condition) {
  if (maps.size() < 5)
    throw std::invalid_argument("larmor_frequency_exact: need at least five map samples");
  LarmorProfile out;
  for (std::size_t i = 2; i + 2 < maps.size(); ++i) {
    if (auto g = generator(maps, i, max_condition)) {
      out.times.push_back(maps[i].time);
      out.omega.push_back(minimal_dissipation_split(*g, maps[i].time).omega_tilde());
    } else {
      out.singular_times.push_back(maps[i].time);
    }
  }
  return out;
}

}  // namespace spinmode
