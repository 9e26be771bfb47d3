#include "spinmode/renorm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinmode {

namespace {
constexpr double kSingularGamma = 1e-10;
constexpr double kSeriesTail = 1e-15;
constexpr int kSeriesCap = 100000;

void require_detuned(const ModelParams& p, const char* label) {
  if (p.detuning() == 0.0)
    throw std::invalid_argument(std::string(label) + ": Delta = 0, closed form undefined (use the thermal series)");
}
}  // namespace

double rabi_frequency(int n, const ModelParams& p) {
  if (n < 0) throw std::invalid_argument("rabi_frequency: n >= 0 required");
  const double d = p.detuning();
  return std::sqrt(d * d + 4.0 * p.g * p.g * n);
}

double period(const ModelParams& p) {
  const double w = rabi_frequency(1, p);
  if (w == 0.0) throw std::invalid_argument("period: Delta = 0 and g = 0 leave no Rabi frequency");
  return 2.0 * std::numbers::pi / w;
}

cplx coeff_c(int n, double t, const ModelParams& p) {
  if (n == 0) return 1.0;
  const double d = p.detuning();
  const double w = rabi_frequency(n, p);
  const double half = 0.5 * t;
  // sin(w t/2)/w extended continuously through w = 0
  const double sinc = (w == 0.0) ? half : std::sin(w * half) / w;
  return std::exp(cplx(0.0, -d * half)) * (std::cos(w * half) + cplx(0.0, d * sinc));
}

cplx coeff_c_dot(int n, double t, const ModelParams& p) {
  if (n == 0) return 0.0;
  const double d = p.detuning();
  const double w = rabi_frequency(n, p);
  const double half = 0.5 * t;
  const double sinc = (w == 0.0) ? half : std::sin(w * half) / w;
  return -2.0 * p.g * p.g * double(n) * sinc * std::exp(cplx(0.0, -d * half));
}

GammaSeries gamma_series(double t, const ModelParams& p) {
  p.validate_exchange();
  const double q = p.nbar / (1.0 + p.nbar);  // e^{-beta omega_m}
  const double weight0 = 1.0 - q;
  GammaSeries out{0.0, 0.0, 0};
  cplx c_n = coeff_c(0, t, p), cdot_n = 0.0;
  double boltzmann = weight0;
  for (int n = 0; n < kSeriesCap; ++n) {
    const cplx c_next = coeff_c(n + 1, t, p);
    const cplx cdot_next = coeff_c_dot(n + 1, t, p);
    out.value += boltzmann * c_n * c_next;
    out.derivative += boltzmann * (cdot_n * c_next + c_n * cdot_next);
    out.terms = n + 1;
    // |c| <= 1 and |c_dot(m)| <= g sqrt(m) bound the whole tail geometrically
    const double tail = (q == 0.0) ? 0.0 : boltzmann * q / weight0;
    const double value_bound = tail;
    const double deriv_bound = tail * 2.0 * p.g * std::sqrt(double(n + 3));
    if (value_bound <= kSeriesTail * std::max(1.0, std::abs(out.value)) &&
        deriv_bound <= kSeriesTail * std::max(p.g, std::abs(out.derivative)))
      break;
    c_n = c_next;
    cdot_n = cdot_next;
    boltzmann *= q;
  }
  return out;
}

cplx gamma_thermal(double t, const ModelParams& p) { return gamma_series(t, p).value; }

cplx gamma_thermal_derivative(double t, const ModelParams& p) {
  return gamma_series(t, p).derivative;
}

std::optional<double> shift_thermal(double t, const ModelParams& p) {
  const GammaSeries s = gamma_series(t, p);
  if (std::abs(s.value) <= kSingularGamma) return std::nullopt;
  return -std::imag(s.derivative / s.value);
}

double shift_vacuum(double t, const ModelParams& p) {
  p.validate_exchange();
  require_detuned(p, "shift_vacuum");
  const double d = p.detuning();
  const double w1 = rabi_frequency(1, p);
  const double s = std::sin(0.5 * w1 * t);
  const double c = std::cos(0.5 * w1 * t);
  // algebraically identical to -(2g^2/Delta) / (1 + (Omega_1/Delta)^2 cot^2),
  // but finite at the cot poles
  return -2.0 * p.g * p.g * d * s * s / (d * d * s * s + w1 * w1 * c * c);
}

double average_shift_vacuum(const ModelParams& p) {
  p.validate_exchange();
  require_detuned(p, "average_shift_vacuum");
  const double d = p.detuning();
  const double sign = (d > 0.0) ? 1.0 : -1.0;
  return -2.0 * p.g * p.g * sign / (rabi_frequency(1, p) + std::abs(d));
}

double lamb_shift(const ModelParams& p) {
  p.validate_exchange();
  require_detuned(p, "lamb_shift");
  return -p.g * p.g / p.detuning();
}

DressedEnergies dressed_energies(const ModelParams& p) {
  p.validate_exchange();
  const double w1 = rabi_frequency(1, p);
  return {0.5 * (p.omega_m + p.omega + w1), 0.5 * (p.omega_m + p.omega - w1)};
}

ShiftProfile shift_profile(const std::vector<double>& times, const ModelParams& p) {
  ShiftProfile out;
  out.times.reserve(times.size());
  out.shift.reserve(times.size());
  for (double t : times) {
    if (auto s = shift_thermal(t, p))
      out.times.push_back(t), out.shift.push_back(*s);
    else
      out.singular_times.push_back(t);
  }
  return out;
}

}  // namespace spinmode
