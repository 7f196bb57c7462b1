#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace becstat::stats {

// Sorted eigenvalue lists keyed by a sector label. Spacing statistics treat
// each entry as an independent sector unless pooling is asked to cross them.
struct SpectrumCollection {
  std::vector<std::pair<std::string, std::vector<double>>> sectors;
};

// Consecutive-gap sample after outlier discarding, normalized so the largest
// kept spacing equals 1. largest_kept holds that gap in original units.
struct SpacingSet {
  std::vector<double> spacings;
  std::size_t total_count = 0;
  std::size_t discarded_count = 0;
  double largest_kept = 0.0;
};

// Equal-width level histogram over the spectral range.
struct DosHistogram {
  std::vector<double> centers;
  std::vector<std::size_t> counts;
  double bin_width = 0.0;
};

// Spacing histogram with per-bin probability densities
// (counts / (sample size * bin width)), so the densities integrate to 1.
struct SpacingHistogram {
  std::vector<double> edges;  // bins + 1 entries
  std::vector<std::size_t> counts;
  std::vector<double> densities;
  std::size_t bins() const { return counts.size(); }
  double center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
};

// gamma * exp(-beta * s) fitted to histogram densities.
struct ExponentialFit {
  double gamma = 0.0;
  double beta = 0.0;
  double residual_rms = 0.0;
};

// The iterative fit did not converge to a positive-parameter exponential.
// Carries the closed-form log-linear estimate so callers can fall back.
struct FitFailure : std::runtime_error {
  FitFailure(const std::string& what, ExponentialFit fb)
      : std::runtime_error(what), fallback(fb) {}
  ExponentialFit fallback;
};

enum class ReferenceLaw { Poisson, Wigner };

// Histogram of sorted levels over [min, max] split into equal bins.
DosHistogram density_of_states(const std::vector<double>& levels, int bins);

// Pool consecutive gaps (per sector, or across the merged level list when
// cross_sector is set), drop gaps above discard_factor times the mean raw
// gap, and normalize the survivors by their maximum.
SpacingSet pooled_spacings(const SpectrumCollection& collection, double discard_factor = 100.0,
                           bool cross_sector = false);

// Bin the normalized spacings into `bins` equal cells of [0, 1].
SpacingHistogram histogram_spacings(const SpacingSet& set, int bins = 45);

// Least-squares fit of gamma * exp(-beta * s) to the nonempty bins:
// log-linear initialization refined by damped Gauss-Newton. Throws
// FitFailure (with the log-linear fallback attached) when the iteration
// stalls or lands on nonpositive parameters.
ExponentialFit fit_exponential(const SpacingHistogram& h);

// Change variables to s' = beta * s and divide densities by gamma, mapping a
// fitted histogram onto the unit-rate exponential profile.
SpacingHistogram rescale(const SpacingHistogram& h, const ExponentialFit& f);

double reference_poisson(double s);  // exp(-s)
double reference_wigner(double s);   // (pi s / 2) exp(-pi s^2 / 4)

// Kolmogorov-Smirnov distance between the spacing sample and a reference
// law. Poisson comparisons rescale by the fitted beta when a fit is given;
// Wigner comparisons (and fit-less Poisson ones) normalize to unit mean.
double distribution_distance(const SpacingSet& set, ReferenceLaw law,
                             const std::optional<ExponentialFit>& fit = std::nullopt);

}  // namespace becstat::stats
