#include "usc/longitudinal.hpp"

#include <algorithm>
#include <cmath>

#include "usc/error.hpp"

namespace usc::longitudinal {

namespace {

void require_unit(int v, const char* name) {
  if (v != 1 && v != -1)
    fail(ErrorCode::invalid_argument, std::string("longitudinal: ") + name + " must be +1 or -1");
}

int sgn(double x) { return x >= 0.0 ? 1 : -1; }

}  // namespace

int m_value(int m1, int m2, int sign_eps1, int sign_eps2) {
  require_unit(m1, "m1");
  require_unit(m2, "m2");
  require_unit(sign_eps1, "sign_eps1");
  require_unit(sign_eps2, "sign_eps2");
  return sign_eps2 * m2 - sign_eps1 * m1;
}

double coherent_amplitude(int M, double g, double omega_r) { return -M * g / omega_r; }

double sector_energy(double eps1, double eps2, double g, double omega_r, int m1, int m2, int n,
                     bool spin_spin) {
  if (n < 0) fail(ErrorCode::invalid_argument, "sector_energy: n must be >= 0");
  if (!(omega_r > 0.0)) fail(ErrorCode::invalid_argument, "sector_energy: omega_r must be > 0");
  const int M = m_value(m1, m2, sgn(eps1), sgn(eps2));
  double e = n * omega_r + std::abs(eps1) * m1 / 2.0 + std::abs(eps2) * m2 / 2.0 -
             M * M * g * g / omega_r;
  if (spin_spin) {
    // sz_k = sgn(eps_k) m_k
    e -= 2.0 * g * g / omega_r * sgn(eps1) * m1 * sgn(eps2) * m2;
  }
  return e;
}

LongitudinalSector sector(double eps1, double eps2, double g, double omega_r, int m1, int m2,
                          bool spin_spin) {
  LongitudinalSector s;
  s.m1 = m1;
  s.m2 = m2;
  s.sign_eps1 = sgn(eps1);
  s.sign_eps2 = sgn(eps2);
  s.M = m_value(m1, m2, s.sign_eps1, s.sign_eps2);
  s.energy_offset = sector_energy(eps1, eps2, g, omega_r, m1, m2, 0, spin_spin);
  s.coherent_amplitude = coherent_amplitude(s.M, g, omega_r);
  return s;
}

std::vector<LongitudinalSector> sectors(double eps1, double eps2, double g, double omega_r,
                                        bool spin_spin) {
  std::vector<LongitudinalSector> out;
  for (int m2 : {-1, 1})
    for (int m1 : {-1, 1}) out.push_back(sector(eps1, eps2, g, omega_r, m1, m2, spin_spin));
  return out;
}

std::vector<double> analytic_spectrum(double eps1, double eps2, double g, double omega_r,
                                      int per_sector, bool spin_spin) {
  std::vector<double> e;
  for (const auto& s : sectors(eps1, eps2, g, omega_r, spin_spin))
    for (int n = 0; n < per_sector; ++n) e.push_back(s.energy_offset + n * omega_r);
  std::sort(e.begin(), e.end());
  return e;
}

std::string state_label(const LongitudinalSector& s) {
  std::string out = "|";
  out += s.m1 < 0 ? 'g' : 'e';
  out += s.m2 < 0 ? 'g' : 'e';
  out += ">|";
  const int units = s.M * s.sign_eps1 / 2;  // amplitude / alpha
  if (units == 0)
    out += "0";
  else
    out += units > 0 ? "+alpha" : "-alpha";
  out += ">";
  return out;
}

OracleReport check(double eps1, double eps2, double g, double omega_r,
                   const OracleOptions& options) {
  if (options.per_sector < 1 || options.per_sector > options.n_cut)
    fail(ErrorCode::invalid_argument, "oracle: per_sector must lie in [1, n_cut]");

  dicke::DickeParams p;
  p.omega_r = omega_r;
  p.eps1 = eps1;
  p.eps2 = eps2;
  p.g1 = p.g2 = g;
  p.n_cut = options.n_cut;
  p.validate();
  const CMatrix h = dicke::build_h_flux(p, {.spin_spin = options.spin_spin});
  const int n = p.n_cut;
  const CMatrix a = qop::annihilation(n);
  const CMatrix num = qop::number_operator(n);

  OracleReport report;
  report.sectors = sectors(eps1, eps2, g, omega_r, options.spin_spin);
  std::vector<double> merged;
  for (const auto& s : report.sectors) {
    // flux index: sz = +1 is slot 0, and sz_k = sgn(eps_k) m_k
    const int s1 = s.sign_eps1 * s.m1 > 0 ? 0 : 1;
    const int s2 = s.sign_eps2 * s.m2 > 0 ? 0 : 1;
    const int offset = (2 * s1 + s2) * n;
    const CMatrix block = h.block(offset, offset, n, n);
    if ((h.block(offset, 0, n, h.cols()).cwiseAbs().sum() - block.cwiseAbs().sum()) > 1e-12)
      fail(ErrorCode::invalid_argument, "oracle: sectors are not decoupled (nonzero delta?)");
    const auto eig = qop::hermitian_eig(block, {.count = options.per_sector});
    for (int k = 0; k < options.per_sector; ++k) {
      const double exact = s.energy_offset + k * omega_r;
      report.max_energy_error = std::max(report.max_energy_error, std::abs(eig.values[k] - exact));
      merged.push_back(exact);
    }
    const CVector v = eig.vectors.col(0);
    const double amp = (v.adjoint() * a * v)(0, 0).real();
    const double nbar = (v.adjoint() * num * v)(0, 0).real();
    report.max_amplitude_error =
        std::max(report.max_amplitude_error, std::abs(amp - s.coherent_amplitude));
    report.max_photon_error = std::max(
        report.max_photon_error, std::abs(nbar - s.coherent_amplitude * s.coherent_amplitude));
    report.numeric_ground.push_back(eig.values[0]);
  }

  // Whole-matrix comparison below the first level any sector leaves out.
  std::sort(merged.begin(), merged.end());
  double ceiling = 1e300;
  for (const auto& s : report.sectors)
    ceiling = std::min(ceiling, s.energy_offset + options.per_sector * omega_r);
  std::vector<double> expected;
  for (double e : merged)
    if (e < ceiling - 1e-6) expected.push_back(e);
  const auto full = qop::hermitian_eig(h, {.count = int(expected.size()), .vectors = false});
  for (std::size_t k = 0; k < expected.size(); ++k)
    report.max_spectrum_error =
        std::max(report.max_spectrum_error, std::abs(full.values[k] - expected[k]));
  return report;
}

}  // namespace usc::longitudinal
