#include "spinmode/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinmode {

namespace {
constexpr cplx kI{0.0, 1.0};

void require_square(const Matrix& a, const char* label) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument(std::string(label) + ": square matrix expected");
}
}  // namespace

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

Matrix sigma_minus() { return sigma_plus().adjoint(); }

Matrix annihilation(int n_max) {
  if (n_max < 1) throw std::invalid_argument("annihilation: n_max >= 1 required");
  Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix creation(int n_max) { return annihilation(n_max).adjoint(); }

Matrix number_operator(int n_max) {
  Matrix n = Matrix::Zero(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k) n(k, k) = double(k);
  return n;
}

Matrix tensor(const Matrix& spin_factor, const Matrix& mode_factor) {
  require_square(spin_factor, "tensor");
  require_square(mode_factor, "tensor");
  const Eigen::Index ds = spin_factor.rows(), dm = mode_factor.rows();
  Matrix out(ds * dm, ds * dm);
  for (Eigen::Index i = 0; i < ds; ++i)
    for (Eigen::Index j = 0; j < ds; ++j)
      out.block(i * dm, j * dm, dm, dm) = spin_factor(i, j) * mode_factor;
  return out;
}

Matrix partial_trace_mode(const Matrix& rho, int n_max) {
  const Eigen::Index dm = n_max + 1;
  if (rho.rows() != 2 * dm || rho.cols() != 2 * dm)
    throw std::invalid_argument("partial_trace_mode: state dimension does not match n_max");
  Matrix out = Matrix::Zero(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      out(i, j) = rho.block(i * dm, j * dm, dm, dm).trace();
  return out;
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho - sigma);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double expectation(const Matrix& obs, const Matrix& rho) {
  if (obs.rows() != rho.rows() || obs.cols() != rho.cols())
    throw std::invalid_argument("expectation: dimension mismatch");
  const cplx tr = (obs * rho).trace();
  if (std::abs(tr.imag()) > 1e-8 * (1.0 + std::abs(tr.real())))
    throw std::runtime_error("expectation: non-negligible imaginary part, inputs not hermitian");
  return tr.real();
}

double hermitian_defect(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const Matrix& a, double tol, const char* label) {
  require_square(a, label);
  const double defect = hermitian_defect(a);
  if (defect > tol)
    throw std::invalid_argument(std::string(label) + ": hermitian defect " + std::to_string(defect));
}

void require_density_matrix(const Matrix& rho, double tol) {
  require_hermitian(rho, tol, "density matrix");
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    throw std::invalid_argument("density matrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("density matrix: negative eigenvalue");
}

Propagator::Propagator(const Matrix& h) {
  require_hermitian(h, 1e-9, "propagator generator");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

Matrix Propagator::unitary(double t) const {
  Vector phases(evals_.size());
  for (Eigen::Index k = 0; k < evals_.size(); ++k)
    phases(k) = std::exp(cplx(0.0, -evals_(k) * t));
  return evecs_ * phases.asDiagonal() * evecs_.adjoint();
}

Matrix Propagator::evolve(const Matrix& rho, double t) const {
  const Matrix u = unitary(t);
  return u * rho * u.adjoint();
}

Matrix hermitian_propagator(const Matrix& h, double t) {
  return Propagator(h).unitary(t);
}

Matrix displacement_exponential(double eta, int n_max, int pad) {
  if (n_max < 1 || pad < 0)
    throw std::invalid_argument("displacement_exponential: n_max >= 1, pad >= 0 required");
  const int big = n_max + pad;
  const Matrix x = annihilation(big) + creation(big);
  // exp(i eta x) is unitary on the padded space; the truncation below leaks
  // only through the top pad levels
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  Vector phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(cplx(0.0, eta * es.eigenvalues()(k)));
  const Matrix full = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return full.topLeftCorner(n_max + 1, n_max + 1);
}

double mode_tail_population(const Matrix& rho, int n_max) {
  const Eigen::Index dm = n_max + 1;
  if (rho.rows() != 2 * dm)
    throw std::invalid_argument("mode_tail_population: state dimension does not match n_max");
  double tail = 0.0;
  for (Eigen::Index s = 0; s < 2; ++s)
    for (Eigen::Index n = dm - 2; n < dm; ++n) tail += rho(s * dm + n, s * dm + n).real();
  return tail;
}

}  // namespace spinmode
