#pragma once

// Closed-form spectrum of the two-qubit model with delta1 = delta2 = 0 and
// g1 = g2 = g. Each flux configuration (m1, m2) leaves a displaced
// oscillator; m = -1 is the lower-energy atomic state |g>.

#include <string>
#include <vector>

#include "usc/dicke.hpp"

namespace usc::longitudinal {

struct LongitudinalSector {
  int m1 = -1, m2 = -1;
  int sign_eps1 = -1, sign_eps2 = -1;
  int M = 0;
  double energy_offset = 0.0;       // sector energy at n = 0, GHz
  double coherent_amplitude = 0.0;  // <a> in the sector ground state
};

/// M = sgn(eps2) m2 - sgn(eps1) m1. All arguments must be +1 or -1.
int m_value(int m1, int m2, int sign_eps1, int sign_eps2);

/// -M g / omega_r.
double coherent_amplitude(int M, double g, double omega_r);

/// n omega_r + |eps1| m1 / 2 + |eps2| m2 / 2 - M^2 g^2 / omega_r.
/// With spin_spin the direct -(2 g^2 / omega_r) sz1 sz2 term of the full
/// model is added; it is constant inside a sector.
double sector_energy(double eps1, double eps2, double g, double omega_r, int m1, int m2, int n,
                     bool spin_spin = false);

LongitudinalSector sector(double eps1, double eps2, double g, double omega_r, int m1, int m2,
                          bool spin_spin = false);

/// The four sectors in (m1, m2) order (-1,-1), (+1,-1), (-1,+1), (+1,+1).
std::vector<LongitudinalSector> sectors(double eps1, double eps2, double g, double omega_r,
                                        bool spin_spin = false);

/// Sector energies for n = 0 .. per_sector-1, merged and sorted.
std::vector<double> analytic_spectrum(double eps1, double eps2, double g, double omega_r,
                                      int per_sector, bool spin_spin = false);

/// State label such as "|eg>|-alpha>" or "|gg>|0>", with the coherent
/// amplitude written in units of alpha = -sgn(eps1) 2 g / omega_r.
std::string state_label(const LongitudinalSector& s);

struct OracleOptions {
  int n_cut = 50;
  int per_sector = 8;   // lowest levels compared in every sector
  bool spin_spin = false;
};

struct OracleReport {
  double max_energy_error = 0.0;     // GHz, per-sector blocks against the closed form
  double max_spectrum_error = 0.0;   // GHz, whole-matrix spectrum against merged sectors
  double max_amplitude_error = 0.0;  // |<a> + M g / omega_r| on sector ground states
  double max_photon_error = 0.0;     // |<a'a> - (M g / omega_r)^2|
  std::vector<LongitudinalSector> sectors;
  std::vector<double> numeric_ground;  // per sector, GHz
};

/// Diagonalizes build_h_flux at delta = 0 and compares against the closed form.
OracleReport check(double eps1, double eps2, double g, double omega_r,
                   const OracleOptions& options = {});

}  // namespace usc::longitudinal
