#include "becstat/three_mode.hpp"

#include <cmath>
#include <stdexcept>

namespace becstat::three_mode {

namespace {

void check_couplings(const ThreeModeCouplings& c) {
  for (double v : {c.uaa, c.ubb, c.ucc, c.uab, c.uac, c.ubc, c.mua, c.mub, c.muc, c.omega})
    if (!std::isfinite(v)) throw std::domain_error("three_mode: nonfinite coupling");
}

void check_atoms(std::int64_t n_atoms) {
  if (n_atoms < 0) throw std::domain_error("three_mode: atom number must be >= 0");
}

}  // namespace

std::int64_t restricted_dimension(std::int64_t n_atoms) {
  check_atoms(n_atoms);
  return (n_atoms % 2 == 0) ? (n_atoms * n_atoms + 6 * n_atoms + 8) / 8
                            : (n_atoms * n_atoms + 4 * n_atoms + 3) / 8;
}

std::int64_t full_sector_dimension(std::int64_t n_atoms) {
  check_atoms(n_atoms);
  return (n_atoms % 2 == 0) ? (n_atoms + 2) * (n_atoms + 2) / 4
                            : (n_atoms * n_atoms + 4 * n_atoms + 3) / 4;
}

ThreeModeSector make_integrable_sector(std::int64_t n_atoms, std::int64_t i_imbalance) {
  check_atoms(n_atoms);
  if (i_imbalance > n_atoms || i_imbalance < -n_atoms)
    throw std::domain_error("three_mode: |imbalance| cannot exceed the atom number");
  if ((n_atoms - i_imbalance) % 2 != 0)
    throw std::domain_error("three_mode: imbalance must have the parity of the atom number");
  ThreeModeSector sec;
  sec.n_atoms = n_atoms;
  sec.i_imbalance = i_imbalance;
  const std::int64_t abs_i = i_imbalance >= 0 ? i_imbalance : -i_imbalance;
  const std::int64_t n_max = (n_atoms - abs_i) / 2;
  sec.basis.reserve(static_cast<std::size_t>(n_max) + 1);
  for (std::int64_t n = 0; n <= n_max; ++n)
    sec.basis.push_back({(n_atoms - 2 * n + i_imbalance) / 2,
                         (n_atoms - 2 * n - i_imbalance) / 2, n});
  return sec;
}

std::vector<ThreeModeBasisState> enumerate_full_basis(std::int64_t n_atoms) {
  check_atoms(n_atoms);
  std::vector<ThreeModeBasisState> basis;
  basis.reserve(static_cast<std::size_t>(full_sector_dimension(n_atoms)));
  for (std::int64_t n = 0; 2 * n <= n_atoms; ++n)
    for (std::int64_t l = 0; l <= n_atoms - 2 * n; ++l)
      basis.push_back({l, n_atoms - 2 * n - l, n});
  return basis;
}

double diag_element(const ThreeModeCouplings& c, const ThreeModeBasisState& s) {
  check_couplings(c);
  if (s.l < 0 || s.m < 0 || s.n < 0)
    throw std::domain_error("three_mode: negative occupation number");
  const double l = static_cast<double>(s.l);
  const double m = static_cast<double>(s.m);
  const double n = static_cast<double>(s.n);
  return c.uaa * l * l + c.ubb * m * m + c.ucc * n * n + c.uab * l * m + c.uac * l * n +
         c.ubc * m * n + c.mua * l + c.mub * m + c.muc * n;
}

linalg::SymTridiagonal build_integrable_sector(const ThreeModeCouplings& c,
                                               std::int64_t n_atoms, std::int64_t i_imbalance) {
  check_couplings(c);
  const ThreeModeSector sec = make_integrable_sector(n_atoms, i_imbalance);
  const std::size_t d = sec.basis.size();
  linalg::SymTridiagonal t;
  t.diag.resize(d);
  t.offdiag.resize(d - 1);
  for (std::size_t i = 0; i < d; ++i) t.diag[i] = diag_element(c, sec.basis[i]);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    // interconversion step: one molecule forms out of an (a, b) atom pair
    const auto& s = sec.basis[i];
    t.offdiag[i] = c.omega * std::sqrt(static_cast<double>(s.n + 1) *
                                       static_cast<double>(s.l) * static_cast<double>(s.m));
  }
  return t;
}

std::vector<SectorSpectrum> spectrum_integrable_restricted(const ThreeModeCouplings& c,
                                                           std::int64_t n_atoms) {
  check_couplings(c);
  check_atoms(n_atoms);
  std::vector<SectorSpectrum> out;
  for (std::int64_t i = n_atoms % 2; i <= n_atoms; i += 2) {
    SectorSpectrum ss;
    ss.n_atoms = n_atoms;
    ss.i_imbalance = i;
    ss.energies = linalg::eigen_sym_tridiag(build_integrable_sector(c, n_atoms, i));
    out.push_back(std::move(ss));
  }
  return out;
}

linalg::SymDense build_nonintegrable_sector(const ThreeModeCouplings& c, std::int64_t n_atoms,
                                            double h1_strength) {
  check_couplings(c);
  check_atoms(n_atoms);
  if (!std::isfinite(h1_strength))
    throw std::domain_error("three_mode: nonfinite h1 strength");
  const auto basis = enumerate_full_basis(n_atoms);
  const std::size_t d = basis.size();
  // index of state (l, ., n): rows of fixed n are contiguous, l ascending
  const auto index_of = [n_atoms](std::int64_t l, std::int64_t n) {
    return static_cast<std::size_t>(n * (n_atoms + 2 - n) + l);
  };
  linalg::SymDense h(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto& s = basis[i];
    h.set(i, i, diag_element(c, s));
    if (s.l >= 1 && s.m >= 1) {
      // molecule-formation edge, generated once from the low-n side
      const double amp = c.omega * std::sqrt(static_cast<double>(s.n + 1) *
                                             static_cast<double>(s.l) *
                                             static_cast<double>(s.m));
      h.set(i, index_of(s.l - 1, s.n + 1), amp);
    }
    if (s.m >= 1) {
      // one-atom hop b -> a, generated once from the low-l side
      const double amp =
          h1_strength * std::sqrt(static_cast<double>(s.l + 1) * static_cast<double>(s.m));
      h.set(i, index_of(s.l + 1, s.n), amp);
    }
  }
  return h;
}

std::vector<double> spectrum_nonintegrable(const ThreeModeCouplings& c, std::int64_t n_atoms,
                                           double h1_strength) {
  return linalg::eigen_sym_dense(build_nonintegrable_sector(c, n_atoms, h1_strength));
}

}  // namespace becstat::three_mode
