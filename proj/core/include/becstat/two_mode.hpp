#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "becstat/linalg.hpp"

namespace becstat::two_mode {

// Couplings of the two-mode model: intra-well interactions u11/u22, the
// cross term u12, external potentials mu1/mu2, and the tunneling strength ej.
struct TwoModeCouplings {
  double u11 = 0.0;
  double u22 = 0.0;
  double u12 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double ej = 0.0;
};

// A fixed-total-number sector. Basis state m (0..n_total) has n_total - m
// bosons in mode 1 and m in mode 2.
struct TwoModeSector {
  std::int64_t n_total = 0;
  std::int64_t dimension() const { return n_total + 1; }
  bool valid_index(std::int64_t m) const { return m >= 0 && m <= n_total; }
};

// Sign plus log-magnitude representation of a real number; keeps the
// recursion products well inside double range for any sector size.
struct SignedLog {
  int sign = 0;          // -1, 0, +1
  double log_abs = 0.0;  // meaningful only when sign != 0
};

// Trajectory of the characteristic recursion at one trial energy:
// alphas[m] represents alpha_m (alpha_0 = 1), ys[m] the continued-fraction
// factor Y_m (Y_0 = 1). alphas has n_total + 2 entries, ys has n_total + 1.
struct RecursionState {
  double e_trial = 0.0;
  std::vector<SignedLog> alphas;
  std::vector<double> ys;
};

enum class Regime { Rabi, Josephson, Fock, Unclassified };
const char* to_string(Regime r);

// Recursion asked to run with ej = 0: the sector matrix is already diagonal
// and the X_m factors are undefined.
struct IntegrableDegenerate : std::domain_error {
  using std::domain_error::domain_error;
};

// An X_m or Y_m factor hit exactly zero at this trial energy; the caller is
// expected to perturb the energy by an ulp-scale nudge and retry.
struct BreakdownAtTrialEnergy : std::runtime_error {
  BreakdownAtTrialEnergy(std::string what, double e, std::int64_t step)
      : std::runtime_error(std::move(what)), e_trial(e), step_index(step) {}
  double e_trial;
  std::int64_t step_index;
};

// Root isolation could not establish consistent sign-count brackets. Carries
// a diagnostic grid of (energy, recursion count) samples; count -1 marks a
// persistent recursion breakdown at that energy.
struct BracketingFailure : std::runtime_error {
  BracketingFailure(std::string what, std::vector<std::pair<double, int>> samples)
      : std::runtime_error(std::move(what)), grid(std::move(samples)) {}
  std::vector<std::pair<double, int>> grid;
};

// eigenvector() was handed an energy that is not within tolerance of any
// eigenvalue of the sector.
struct NotAnEigenvalue : std::domain_error {
  using std::domain_error::domain_error;
};

// Diagonal matrix element of basis state m in the n-boson sector.
double diag_element(const TwoModeCouplings& c, std::int64_t n, std::int64_t m);

// The (n+1)-dimensional sector matrix in the number basis.
linalg::SymTridiagonal build_sector(const TwoModeCouplings& c, std::int64_t n);

// All n+1 sector eigenvalues, ascending, via the tridiagonal solver.
std::vector<double> spectrum(const TwoModeCouplings& c, std::int64_t n);

// Run the characteristic recursion at trial energy e. Throws
// IntegrableDegenerate when ej = 0 and BreakdownAtTrialEnergy when an
// X_m or Y_m factor vanishes.
RecursionState evaluate_recursion(const TwoModeCouplings& c, std::int64_t n, double e);

// alpha_{n+1}(e): zero exactly at the sector eigenvalues. Sign and
// log-magnitude of the full product of X_m Y_m factors.
SignedLog alpha_top(const TwoModeCouplings& c, std::int64_t n, double e);

// All sector eigenvalues located as roots of alpha_top: isolation via the
// recursion's own sign counts, then bisection on the sign of alpha_top.
// Agrees with spectrum() to ~1e-8 of the spectral width.
std::vector<double> spectrum_via_recursion(const TwoModeCouplings& c, std::int64_t n);

// Unit-norm eigenvector for a converged eigenvalue e, from the recursion
// coefficients. Components follow the basis convention of TwoModeSector.
std::vector<double> eigenvector(const TwoModeCouplings& c, std::int64_t n, double e);

// Coarse interaction-vs-tunneling classification of the sector physics.
Regime classify_regime(const TwoModeCouplings& c, std::int64_t n);

}  // namespace becstat::two_mode
