#pragma once

#include <Eigen/Dense>
#include <complex>

// Composite spin-1/2 (+) bosonic mode workspace: Kronecker products, partial
// trace, distances and exact propagators.  Ordering is spin (x) mode, spin
// basis (|up>, |down>) with index 0 = up, Fock basis |0..n_max>.
// All generators are in rad/s, times in seconds.

namespace spinmode {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

Matrix identity(Eigen::Index dim);

// 2x2 spin operators, sigma_z = diag(1,-1), sigma_plus = |up><down|
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_plus();
Matrix sigma_minus();

// truncated mode operators on n_max+1 levels
Matrix annihilation(int n_max);
Matrix creation(int n_max);
Matrix number_operator(int n_max);

// spin factor first; result indexed s*(n_max+1)+n
Matrix tensor(const Matrix& spin_factor, const Matrix& mode_factor);

// trace out the mode, returns the 2x2 spin state
Matrix partial_trace_mode(const Matrix& rho, int n_max);

double trace_distance(const Matrix& rho, const Matrix& sigma);

// Tr(obs * rho), imaginary part must vanish for hermitian inputs
double expectation(const Matrix& obs, const Matrix& rho);

double hermitian_defect(const Matrix& a);

void require_hermitian(const Matrix& a, double tol, const char* label);
void require_density_matrix(const Matrix& rho, double tol = 1e-9);

// exp(-i h t) through a cached eigendecomposition; h must be hermitian
class Propagator {
 public:
  explicit Propagator(const Matrix& h);

  Matrix unitary(double t) const;
  Matrix evolve(const Matrix& rho, double t) const;
  const Eigen::VectorXd& eigenvalues() const { return evals_; }

 private:
  Eigen::VectorXd evals_;
  Matrix evecs_;
};

Matrix hermitian_propagator(const Matrix& h, double t);

// exp(i eta (a' + a)) on n_max+1 levels.  Internally evaluated with `pad`
// extra levels so the retained block is a faithful slice of the infinite
// displacement operator, then truncated.
Matrix displacement_exponential(double eta, int n_max, int pad = 10);

// population of the top two Fock levels; the cutoff adequacy guard
double mode_tail_population(const Matrix& rho, int n_max);

}  // namespace spinmode
