#pragma once

#include <cstdint>
#include <vector>

#include "becstat/linalg.hpp"

namespace becstat::three_mode {

// Couplings of the two-atomic-modes-plus-molecule model: pairwise
// interactions u**, external potentials mu*, and the atom-molecule
// interconversion strength omega.
struct ThreeModeCouplings {
  double uaa = 0.0;
  double ubb = 0.0;
  double ucc = 0.0;
  double uab = 0.0;
  double uac = 0.0;
  double ubc = 0.0;
  double mua = 0.0;
  double mub = 0.0;
  double muc = 0.0;
  double omega = 0.0;
};

// Occupation-number basis state: l atoms in mode a, m atoms in mode b,
// n molecules in mode c. A molecule binds two atoms.
struct ThreeModeBasisState {
  std::int64_t l = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t atom_number() const { return l + m + 2 * n; }
  std::int64_t imbalance() const { return l - m; }
};

// Conserved-number sector of the interconversion-integrable model: fixed
// total atom number and fixed imbalance I = l - m. Basis states are listed
// by ascending molecule count n; state n has l = (N - 2n + I)/2 and
// m = (N - 2n - I)/2.
struct ThreeModeSector {
  std::int64_t n_atoms = 0;
  std::int64_t i_imbalance = 0;
  std::vector<ThreeModeBasisState> basis;
  std::int64_t dimension() const { return static_cast<std::int64_t>(basis.size()); }
};

// Sorted eigenvalues of one sector together with its labels.
struct SectorSpectrum {
  std::int64_t n_atoms = 0;
  std::int64_t i_imbalance = 0;
  std::vector<double> energies;
};

// Number of states with total atom number n_atoms and imbalance >= 0.
std::int64_t restricted_dimension(std::int64_t n_atoms);

// Number of states with total atom number n_atoms and any imbalance.
std::int64_t full_sector_dimension(std::int64_t n_atoms);

// Enumerate the (n_atoms, i_imbalance) sector. Throws std::domain_error for
// inadmissible labels: negative n_atoms, |I| > n_atoms, or mismatched parity.
ThreeModeSector make_integrable_sector(std::int64_t n_atoms, std::int64_t i_imbalance);

// All states with the given atom number, ordered lexicographically by
// (molecule count, mode-a count). This is the basis the dense
// non-integrable build uses.
std::vector<ThreeModeBasisState> enumerate_full_basis(std::int64_t n_atoms);

// Diagonal matrix element of one basis state.
double diag_element(const ThreeModeCouplings& c, const ThreeModeBasisState& s);

// Tridiagonal matrix of the integrable model in one (N, I) sector.
linalg::SymTridiagonal build_integrable_sector(const ThreeModeCouplings& c,
                                               std::int64_t n_atoms, std::int64_t i_imbalance);

// Spectra of every sector with imbalance >= 0 at fixed atom number,
// ordered by ascending imbalance.
std::vector<SectorSpectrum> spectrum_integrable_restricted(const ThreeModeCouplings& c,
                                                           std::int64_t n_atoms);

// Dense matrix of the model with the integrability-breaking one-atom hop
// added at the given strength (the conserved atom number survives; the
// imbalance does not). h1_strength = 0 recovers the integrable model on the
// full fixed-N space.
linalg::SymDense build_nonintegrable_sector(const ThreeModeCouplings& c, std::int64_t n_atoms,
                                            double h1_strength = 1.0);

// Sorted eigenvalues of the dense non-integrable sector.
std::vector<double> spectrum_nonintegrable(const ThreeModeCouplings& c, std::int64_t n_atoms,
                                           double h1_strength = 1.0);

}  // namespace becstat::three_mode
