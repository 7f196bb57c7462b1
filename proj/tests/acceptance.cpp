// Acceptance gate: eight end-to-end checks against the published reference
// behavior, one [PASS]/[FAIL] line each. Exit status is the number of failed
// criteria. All tolerances are pinned here as constants.
//
// Pooling note: criteria 2, 3, and 8 pool spacings from the merged level
// list across sectors (superposed independent sub-spectra), which is the
// reading that reproduces the reference statistics best; criterion 4 keeps
// gaps within each sector so that repulsion, if present, is not diluted by
// inter-sector gaps.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "becstat/linalg.hpp"
#include "becstat/presets.hpp"
#include "becstat/stats.hpp"
#include "becstat/three_mode.hpp"
#include "becstat/two_mode.hpp"

namespace la = becstat::linalg;
namespace twm = becstat::two_mode;
namespace thm = becstat::three_mode;
namespace st = becstat::stats;
namespace pr = becstat::presets;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const twm::TwoModeCouplings& two(const std::string& name) {
  return std::get<twm::TwoModeCouplings>(pr::find_preset(name)->couplings);
}

const thm::ThreeModeCouplings& three(const std::string& name) {
  return std::get<thm::ThreeModeCouplings>(pr::find_preset(name)->couplings);
}

st::SpectrumCollection dimer_collection(const twm::TwoModeCouplings& c, std::int64_t start,
                                        std::int64_t end, std::int64_t step) {
  st::SpectrumCollection col;
  for (std::int64_t n = start; n <= end; n += step)
    col.sectors.emplace_back("N=" + std::to_string(n), twm::spectrum(c, n));
  return col;
}

st::SpectrumCollection triad_collection(const thm::ThreeModeCouplings& c, std::int64_t n_atoms) {
  st::SpectrumCollection col;
  for (auto& sec : thm::spectrum_integrable_restricted(c, n_atoms))
    col.sectors.emplace_back(
        "N=" + std::to_string(sec.n_atoms) + " I=" + std::to_string(sec.i_imbalance),
        std::move(sec.energies));
  return col;
}

struct PipelineResult {
  st::SpacingSet set;
  std::optional<st::ExponentialFit> fit;
  double ks_poisson = -1.0;
  double discard_fraction = 0.0;
  std::string fit_error;
};

PipelineResult run_pipeline(const st::SpectrumCollection& col, bool cross_sector) {
  PipelineResult r;
  r.set = st::pooled_spacings(col, 100.0, cross_sector);
  r.discard_fraction =
      static_cast<double>(r.set.discarded_count) / static_cast<double>(r.set.total_count);
  try {
    r.fit = st::fit_exponential(st::histogram_spacings(r.set, 45));
  } catch (const st::FitFailure& e) {
    r.fit_error = e.what();
  } catch (const std::domain_error& e) {
    r.fit_error = e.what();
  }
  r.ks_poisson = st::distribution_distance(r.set, st::ReferenceLaw::Poisson, r.fit);
  return r;
}

// Fraction of unit-mean-normalized spacings at or below 0.1, expressed as a
// probability density over [0, 0.1]. Unit-mean Wigner gives ~0.078 here,
// unit-mean Poisson ~0.95.
double small_gap_density(const st::SpacingSet& set) {
  double mean = 0.0;
  for (double s : set.spacings) mean += s;
  mean /= static_cast<double>(set.spacings.size());
  std::size_t hits = 0;
  for (double s : set.spacings)
    if (s <= 0.1 * mean) ++hits;
  return static_cast<double>(hits) / static_cast<double>(set.spacings.size()) / 0.1;
}

double spectral_width(const std::vector<double>& v) { return v.back() - v.front(); }

// Dense reference matrix assembled by neighbor lookup, independent of the
// production banded/tridiagonal construction.
la::SymDense dense_reference(const thm::ThreeModeCouplings& c,
                             const std::vector<thm::ThreeModeBasisState>& basis, double h1) {
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, std::size_t> at;
  for (std::size_t i = 0; i < basis.size(); ++i) at[{basis[i].l, basis[i].m, basis[i].n}] = i;
  la::SymDense h(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& s = basis[i];
    const double l = static_cast<double>(s.l);
    const double m = static_cast<double>(s.m);
    const double n = static_cast<double>(s.n);
    h.set(i, i, c.uaa * l * l + c.ubb * m * m + c.ucc * n * n + c.uab * l * m + c.uac * l * n +
                    c.ubc * m * n + c.mua * l + c.mub * m + c.muc * n);
    if (auto it = at.find({s.l - 1, s.m - 1, s.n + 1}); it != at.end())
      h.set(i, it->second, c.omega * std::sqrt((n + 1.0) * l * m));
    if (auto it = at.find({s.l + 1, s.m - 1, s.n}); it != at.end())
      h.set(i, it->second, h1 * std::sqrt((l + 1.0) * m));
  }
  return h;
}

struct Criterion {
  int id;
  bool pass;
  std::string headline;
  std::vector<std::string> detail;
};

std::vector<Criterion> g_results;

void report(int id, bool pass, std::string headline, std::vector<std::string> detail = {}) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, headline.c_str());
  for (const auto& d : detail) std::printf("         %s\n", d.c_str());
  std::fflush(stdout);
  g_results.push_back({id, pass, std::move(headline), std::move(detail)});
}

char buf[512];

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Sector dimension bookkeeping, closed forms plus explicit enumeration.

void criterion_1() {
  const auto t0 = Clock::now();
  std::int64_t dimer_total = 0;
  for (std::int64_t n = 360; n <= 400; n += 4) dimer_total += n + 1;

  const std::int64_t triad_total = thm::restricted_dimension(400);

  std::int64_t noninteg_total = 0;
  for (std::int64_t n = 50; n <= 100; n += 10) noninteg_total += thm::full_sector_dimension(n);

  // Enumeration cross-check: count states directly.
  std::int64_t triad_enum = 0;
  for (std::int64_t i = 400; i >= 0; i -= 2)
    triad_enum += thm::make_integrable_sector(400, i).dimension();
  std::int64_t noninteg_enum = 0;
  for (std::int64_t n = 50; n <= 100; n += 10)
    noninteg_enum += static_cast<std::int64_t>(thm::enumerate_full_basis(n).size());
  const double dt = seconds_since(t0);

  const bool pass = dimer_total == 4191 && triad_total == 20301 && noninteg_total == 9331 &&
                    triad_enum == 20301 && noninteg_enum == 9331 && dt <= 1.0;
  report(1, pass,
         fmt("sector dimensions: dimer 360..400/4 -> %lld (want 4191), "
             "three-mode N=400 I>=0 -> %lld (want 20301), "
             "full N=50..100/10 -> %lld (want 9331); enumeration cross-check %.2fs (limit 1s)",
             static_cast<long long>(dimer_total), static_cast<long long>(triad_total),
             static_cast<long long>(noninteg_total), dt));
}

// ---------------------------------------------------------------------------
// 2. Dimer level-spacing statistics, sectors 360:400:4, all seven catalog
//    columns: Poisson KS below 0.05 with under 1% of gaps discarded.

void criterion_2() {
  constexpr double kKsLimit = 0.05;
  constexpr double kDiscardLimit = 0.01;
  constexpr double kTimeLimit = 30.0;

  bool pass = true;
  std::vector<std::string> detail;
  for (const char* name :
       {"II.star", "II.dot", "II.cross", "II.plus", "II.ftri", "II.fsq", "II.fdia"}) {
    const auto t0 = Clock::now();
    const auto col = dimer_collection(two(name), 360, 400, 4);
    const auto r = run_pipeline(col, /*cross_sector=*/true);
    const double dt = seconds_since(t0);
    const bool ok =
        r.ks_poisson < kKsLimit && r.discard_fraction < kDiscardLimit && dt < kTimeLimit;
    pass = pass && ok;
    detail.push_back(fmt("%-8s ks=%.4f (limit %.2f) discard=%.3f%% t=%.1fs %s", name,
                         r.ks_poisson, kKsLimit, 100.0 * r.discard_fraction, dt,
                         ok ? "ok" : "FAIL"));
  }
  report(2, pass, "dimer spacing statistics vs Poisson, merged sectors 360:400:4",
         std::move(detail));
}

// ---------------------------------------------------------------------------
// 3. Three-mode integrable spacing statistics at N=400, I>=0, all eight
//    catalog columns: Poisson KS below 0.05.

void criterion_3() {
  constexpr double kKsLimit = 0.05;
  constexpr double kTimeLimit = 60.0;

  bool pass = true;
  std::vector<std::string> detail;
  for (const char* name : {"III.star", "III.dot", "III.cross", "III.plus", "III.ftri", "III.fsq",
                           "III.dtri", "III.fdia"}) {
    const auto t0 = Clock::now();
    const auto col = triad_collection(three(name), 400);
    const auto r = run_pipeline(col, /*cross_sector=*/true);
    const double dt = seconds_since(t0);
    const bool ok = r.ks_poisson < kKsLimit && dt < kTimeLimit;
    pass = pass && ok;
    detail.push_back(fmt("%-9s ks=%.4f (limit %.2f) t=%.1fs %s", name, r.ks_poisson, kKsLimit,
                         dt, ok ? "ok" : "FAIL"));
  }
  report(3, pass, "three-mode integrable spacing statistics vs Poisson, N=400 I>=0",
         std::move(detail));
}

// ---------------------------------------------------------------------------
// 4. Symmetry-broken model, sectors 50:100:10: spacing statistics should sit
//    closer to the Wigner surmise than to Poisson and show level repulsion.

void criterion_4() {
  constexpr double kWignerLimit = 0.10;
  constexpr double kRepulsionLimit = 0.4;

  bool pass = true;
  std::vector<std::string> detail;
  for (const char* name : {"III.star", "III.dot", "III.cross", "III.plus", "III.ftri", "III.fsq",
                           "III.dtri", "III.fdia"}) {
    const auto t0 = Clock::now();
    st::SpectrumCollection col;
    for (std::int64_t n = 50; n <= 100; n += 10)
      col.sectors.emplace_back("N=" + std::to_string(n),
                               thm::spectrum_nonintegrable(three(name), n, 1.0));
    const auto set = st::pooled_spacings(col, 100.0, /*cross_sector=*/false);
    const double ks_w = st::distribution_distance(set, st::ReferenceLaw::Wigner);
    const double ks_p = st::distribution_distance(set, st::ReferenceLaw::Poisson);
    const double rep = small_gap_density(set);
    const double dt = seconds_since(t0);
    const bool ok = ks_w < ks_p && ks_w < kWignerLimit && rep < kRepulsionLimit;
    pass = pass && ok;
    detail.push_back(
        fmt("%-9s ksW=%.4f ksP=%.4f (want ksW<ksP and ksW<%.2f) density[0,0.1]=%.3f "
            "(limit %.1f) t=%.0fs %s",
            name, ks_w, ks_p, kWignerLimit, rep, kRepulsionLimit, dt, ok ? "ok" : "FAIL"));
  }
  report(4, pass,
         "symmetry-broken model vs Wigner surmise, per-sector gaps, sectors 50:100:10",
         std::move(detail));
}

// ---------------------------------------------------------------------------
// 5. Density-of-states profiles for the three regime rows at N=1000, 50 bins.

void criterion_5() {
  constexpr int kBins = 50;

  const auto profile = [](const char* name) {
    return st::density_of_states(twm::spectrum(two(name), 1000), kBins);
  };

  const auto central_stats = [](const st::DosHistogram& h) {
    const std::size_t n = h.counts.size();
    const std::size_t lo = n / 10, hi = n - n / 10;
    double mean = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mean += static_cast<double>(h.counts[i]);
    mean /= static_cast<double>(hi - lo);
    double var = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double d = static_cast<double>(h.counts[i]) - mean;
      var += d * d;
    }
    var /= static_cast<double>(hi - lo - 1);
    return std::pair<double, double>(mean, std::sqrt(var));
  };

  const auto t0 = Clock::now();
  const auto flat = profile("I.ftri");     // weak-interaction row: flat profile
  const auto peaked = profile("I.dot");    // strong-interaction row: 1/sqrt peak
  const auto crossover = profile("I.fsq"); // intermediate row: low-energy deviation

  const auto [fm, fs] = central_stats(flat);
  const auto [pm, ps] = central_stats(peaked);
  const auto [cm, cs] = central_stats(crossover);

  const double cv_flat = fs / fm;
  const double cv_peaked = ps / pm;
  double dev = 0.0;  // largest low-decile deviation from the central mean, in sigmas
  for (std::size_t i = 0; i < crossover.counts.size() / 10; ++i)
    dev = std::max(dev, std::fabs(static_cast<double>(crossover.counts[i]) - cm) / cs);
  const double dt = seconds_since(t0);

  const bool ok_flat = cv_flat < 0.2;
  const bool ok_peaked = cv_peaked > 0.5;
  const bool ok_crossover = dev > 3.0;
  report(5, ok_flat && ok_peaked && ok_crossover,
         fmt("density-of-states profiles, N=1000, %d bins (%.2fs)", kBins, dt),
         {fmt("I.ftri central-80%% CV=%.3f (want <0.2) %s", cv_flat, ok_flat ? "ok" : "FAIL"),
          fmt("I.dot  central-80%% CV=%.3f (want >0.5) %s", cv_peaked, ok_peaked ? "ok" : "FAIL"),
          fmt("I.fsq  low-decile deviation=%.1f sigma (want >3) %s", dev,
              ok_crossover ? "ok" : "FAIL")});
}

// ---------------------------------------------------------------------------
// 6. Oracle equivalence: the root-finding solver against the tridiagonal
//    solver, and banded sector spectra against a dense reference.

void criterion_6() {
  const auto t0 = Clock::now();
  std::mt19937 rng(20250818);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> mu(-10.0, 10.0);
  std::uniform_real_distribution<double> ej(0.1, 20.0);
  std::uniform_int_distribution<std::int64_t> size(2, 60);

  int bad_dimer = 0;
  double worst_dimer = 0.0;
  for (int draw = 0; draw < 200; ++draw) {
    twm::TwoModeCouplings c{u(rng), u(rng), u(rng), mu(rng), mu(rng), ej(rng)};
    const auto n = size(rng);
    const auto a = twm::spectrum(c, n);
    const auto b = twm::spectrum_via_recursion(c, n);
    const double width = std::max(spectral_width(a), 1e-300);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double rel = std::fabs(a[i] - b[i]) / width;
      worst_dimer = std::max(worst_dimer, rel);
      if (rel > 1e-8) ++bad_dimer;
    }
  }

  int bad_triad = 0;
  double worst_triad = 0.0;
  std::uniform_real_distribution<double> om(0.1, 20.0);
  for (int draw = 0; draw < 12; ++draw) {
    thm::ThreeModeCouplings c{u(rng), u(rng), u(rng), u(rng), u(rng),
                              u(rng), mu(rng), mu(rng), mu(rng), om(rng)};
    const std::int64_t n_atoms = 4 + 4 * (draw % 5);  // 4..20
    std::vector<double> banded;
    for (std::int64_t i = -n_atoms; i <= n_atoms; i += 2) {
      const auto vals = la::eigen_sym_tridiag(thm::build_integrable_sector(c, n_atoms, i));
      banded.insert(banded.end(), vals.begin(), vals.end());
    }
    std::sort(banded.begin(), banded.end());
    const auto dense = la::eigen_sym_dense(dense_reference(c, thm::enumerate_full_basis(n_atoms), 0.0));
    const double width = std::max(spectral_width(dense), 1e-300);
    for (std::size_t i = 0; i < dense.size(); ++i) {
      const double rel = std::fabs(banded[i] - dense[i]) / width;
      worst_triad = std::max(worst_triad, rel);
      if (rel > 1e-9) ++bad_triad;
    }
  }
  const double dt = seconds_since(t0);

  report(6, bad_dimer == 0 && bad_triad == 0,
         fmt("solver cross-validation (%.1fs)", dt),
         {fmt("dimer root-finder vs tridiagonal, 200 draws N<=60: worst %.2e of width "
              "(limit 1e-8), %d violations",
              worst_dimer, bad_dimer),
          fmt("three-mode banded vs dense reference, N<=20: worst %.2e of width "
              "(limit 1e-9), %d violations",
              worst_triad, bad_triad)});
}

// ---------------------------------------------------------------------------
// 7. Structural invariants: traces, chemical-potential shifts, sign gauge,
//    and stats pipeline scale/shift covariance.

void criterion_7() {
  const auto t0 = Clock::now();
  std::vector<std::string> detail;
  bool pass = true;
  const auto check = [&](bool ok, const std::string& what) {
    pass = pass && ok;
    detail.push_back(what + (ok ? " ok" : " FAIL"));
  };

  {  // trace identity: eigenvalue sum equals diagonal sum
    const auto& c = two("II.plus");
    const std::int64_t n = 300;
    const auto vals = twm::spectrum(c, n);
    double trace = 0.0;
    for (std::int64_t m = 0; m <= n; ++m) trace += twm::diag_element(c, n, m);
    double sum = 0.0, scale = 0.0;
    for (double v : vals) {
      sum += v;
      scale += std::fabs(v);
    }
    check(std::fabs(sum - trace) <= 1e-9 * scale, fmt("dimer trace identity N=300 rel=%.1e",
                                                      std::fabs(sum - trace) / scale));
  }
  {  // chemical-potential shift: mu1,mu2 += d adds d*N to every level
    auto c = two("II.fdia");
    const std::int64_t n = 120;
    const auto base = twm::spectrum(c, n);
    const double d = 0.37;
    c.mu1 += d;
    c.mu2 += d;
    const auto shifted = twm::spectrum(c, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i)
      worst = std::max(worst,
                       std::fabs(shifted[i] - base[i] - d * static_cast<double>(n)));
    check(worst <= 1e-9 * (std::fabs(d) * n), fmt("dimer mu-shift covariance worst=%.1e", worst));
  }
  {  // sign gauge: flipping the hop sign preserves the dimer spectrum
    auto c = two("II.dot");
    const auto a = twm::spectrum(c, 150);
    c.ej = -c.ej;
    const auto b = twm::spectrum(c, 150);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      worst = std::max(worst, std::fabs(a[i] - b[i]));
    check(worst <= 1e-9 * spectral_width(a), fmt("dimer hop-sign gauge worst=%.1e", worst));
  }
  {  // three-mode: mua,mub += d and muc += 2d adds d*N_atoms to every level
    auto c = three("III.plus");
    const std::int64_t n = 60;
    const auto base = triad_collection(c, n);
    const double d = 0.51;
    c.mua += d;
    c.mub += d;
    c.muc += 2.0 * d;
    const auto shifted = triad_collection(c, n);
    double worst = 0.0;
    for (std::size_t s = 0; s < base.sectors.size(); ++s)
      for (std::size_t i = 0; i < base.sectors[s].second.size(); ++i)
        worst = std::max(worst, std::fabs(shifted.sectors[s].second[i] -
                                          base.sectors[s].second[i] -
                                          d * static_cast<double>(n)));
    check(worst <= 1e-8 * (std::fabs(d) * n),
          fmt("three-mode conserved-number shift worst=%.1e", worst));
  }
  {  // three-mode conversion-sign gauge
    auto c = three("III.fsq");
    const auto a = thm::spectrum_nonintegrable(c, 30, 0.0);
    c.omega = -c.omega;
    const auto b = thm::spectrum_nonintegrable(c, 30, 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      worst = std::max(worst, std::fabs(a[i] - b[i]));
    check(worst <= 1e-9 * spectral_width(a), fmt("three-mode conversion-sign gauge worst=%.1e",
                                                 worst));
  }
  {  // stats pipeline: scaling every level and shifting sectors is invisible
    st::SpectrumCollection col = dimer_collection(two("II.cross"), 80, 104, 4);
    auto scaled = col;
    double shift = 3.0;
    for (auto& [label, levels] : scaled.sectors) {
      for (auto& v : levels) v = 3.7 * v + shift;
      shift += 11.0;  // different shift per sector
    }
    const auto a = st::pooled_spacings(col, 100.0, false);
    const auto b = st::pooled_spacings(scaled, 100.0, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.spacings.size(); ++i)
      worst = std::max(worst, std::fabs(a.spacings[i] - b.spacings[i]));
    const double ks_a = st::distribution_distance(a, st::ReferenceLaw::Poisson);
    const double ks_b = st::distribution_distance(b, st::ReferenceLaw::Poisson);
    check(worst <= 1e-12 && a.discarded_count == b.discarded_count &&
              std::fabs(ks_a - ks_b) <= 1e-12,
          fmt("stats scale/shift invariance worst=%.1e dks=%.1e", worst,
              std::fabs(ks_a - ks_b)));
  }
  const double dt = seconds_since(t0);
  detail.push_back(fmt("(%.1fs)", dt));
  report(7, pass, "structural invariants", std::move(detail));
}

// ---------------------------------------------------------------------------
// 8. Negative control: a single fixed-number sector must NOT look Poisson
//    (one effective degree of freedom).

void criterion_8() {
  const auto t0 = Clock::now();
  st::SpectrumCollection col;
  col.sectors.emplace_back("N=400", twm::spectrum(two("II.dot"), 400));
  const auto r = run_pipeline(col, false);
  const double dt = seconds_since(t0);
  report(8, r.ks_poisson > 0.05,
         fmt("negative control, single sector N=400: ks=%.4f (want >0.05) %.1fs", r.ks_poisson,
             dt));
}

}  // namespace

int main() {
  std::printf("acceptance checks\n=================\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  int failed = 0;
  for (const auto& c : g_results)
    if (!c.pass) ++failed;
  std::printf("=================\n%d of %zu criteria passed\n", static_cast<int>(g_results.size()) - failed,
              g_results.size());
  return failed;
}
