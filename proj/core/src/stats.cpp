#include "becstat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace becstat::stats {

namespace {

void check_levels(const std::vector<double>& levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i])) throw std::domain_error("stats: nonfinite level");
    if (i > 0 && levels[i] < levels[i - 1])
      throw std::domain_error("stats: levels must be sorted ascending");
  }
}

double sse_at(const std::vector<double>& s, const std::vector<double>& y, double gamma,
              double beta) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = gamma * std::exp(-beta * s[i]) - y[i];
    sum += r * r;
  }
  return sum;
}

}  // namespace

DosHistogram density_of_states(const std::vector<double>& levels, int bins) {
  if (bins < 1) throw std::domain_error("stats: histogram needs at least one bin");
  if (levels.size() < 2) throw std::domain_error("stats: histogram needs at least two levels");
  check_levels(levels);
  const double lo = levels.front();
  const double span = levels.back() - lo;
  DosHistogram h;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  h.bin_width = span / bins;
  for (double x : levels) {
    std::size_t idx = 0;
    if (span > 0.0)
      idx = std::min(static_cast<std::size_t>((x - lo) / span * bins),
                     static_cast<std::size_t>(bins) - 1);
    ++h.counts[idx];
  }
  h.centers.resize(static_cast<std::size_t>(bins));
  for (std::size_t i = 0; i < h.centers.size(); ++i)
    h.centers[i] = lo + (static_cast<double>(i) + 0.5) * h.bin_width;
  return h;
}

SpacingSet pooled_spacings(const SpectrumCollection& collection, double discard_factor,
                           bool cross_sector) {
  if (collection.sectors.empty())
    throw std::domain_error("stats: spacing pool needs at least one sector");
  if (!(discard_factor > 0.0) || !std::isfinite(discard_factor))
    throw std::domain_error("stats: discard factor must be positive");

  // Sectors with a single level carry no gap; they only matter when merging.
  std::vector<double> gaps;
  if (cross_sector) {
    std::vector<double> merged;
    for (const auto& [label, levels] : collection.sectors) {
      check_levels(levels);
      merged.insert(merged.end(), levels.begin(), levels.end());
    }
    if (merged.size() < 2)
      throw std::domain_error("stats: spacing pool needs at least two levels");
    std::sort(merged.begin(), merged.end());
    gaps.reserve(merged.size() - 1);
    for (std::size_t i = 1; i < merged.size(); ++i) gaps.push_back(merged[i] - merged[i - 1]);
  } else {
    for (const auto& [label, levels] : collection.sectors) {
      check_levels(levels);
      for (std::size_t i = 1; i < levels.size(); ++i)
        gaps.push_back(levels[i] - levels[i - 1]);
    }
    if (gaps.empty())
      throw std::domain_error("stats: no sector contributes a spacing");
  }

  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= static_cast<double>(gaps.size());
  const double cutoff = discard_factor * mean;

  SpacingSet set;
  set.total_count = gaps.size();
  double largest = 0.0;
  for (double g : gaps) {
    if (g <= cutoff) {
      set.spacings.push_back(g);
      largest = std::max(largest, g);
    } else {
      ++set.discarded_count;
    }
  }
  if (set.spacings.empty())
    throw std::domain_error("stats: every spacing exceeded the discard cutoff");
  if (largest <= 0.0)
    throw std::domain_error("stats: all kept spacings are zero; cannot normalize");
  set.largest_kept = largest;
  for (double& g : set.spacings) g /= largest;
  return set;
}

SpacingHistogram histogram_spacings(const SpacingSet& set, int bins) {
  if (bins < 1) throw std::domain_error("stats: histogram needs at least one bin");
  if (set.spacings.empty()) throw std::domain_error("stats: empty spacing set");
  SpacingHistogram h;
  const std::size_t b = static_cast<std::size_t>(bins);
  h.edges.resize(b + 1);
  for (std::size_t i = 0; i <= b; ++i)
    h.edges[i] = static_cast<double>(i) / static_cast<double>(bins);
  h.counts.assign(b, 0);
  for (double s : set.spacings) {
    if (s < 0.0 || s > 1.0)
      throw std::domain_error("stats: spacing outside [0, 1]; normalize first");
    ++h.counts[std::min(static_cast<std::size_t>(s * static_cast<double>(bins)), b - 1)];
  }
  const double w = 1.0 / static_cast<double>(bins);
  h.densities.resize(b);
  for (std::size_t i = 0; i < b; ++i)
    h.densities[i] =
        static_cast<double>(h.counts[i]) / (static_cast<double>(set.spacings.size()) * w);
  return h;
}

ExponentialFit fit_exponential(const SpacingHistogram& h) {
  std::vector<double> s;
  std::vector<double> y;
  for (std::size_t i = 0; i < h.bins(); ++i) {
    if (h.counts[i] > 0) {
      s.push_back(h.center(i));
      y.push_back(h.densities[i]);
    }
  }
  if (s.size() < 3)
    throw std::domain_error("stats: exponential fit needs at least three nonempty bins");

  // Log-linear initialization: least squares of log(y) on s.
  const double n = static_cast<double>(s.size());
  double sx = 0.0;
  double sxx = 0.0;
  double sl = 0.0;
  double sxl = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double ly = std::log(y[i]);
    sx += s[i];
    sxx += s[i] * s[i];
    sl += ly;
    sxl += s[i] * ly;
  }
  const double det = n * sxx - sx * sx;
  const double slope = (n * sxl - sx * sl) / det;
  const double intercept = (sl * sxx - sx * sxl) / det;
  ExponentialFit fallback;
  fallback.gamma = std::exp(intercept);
  fallback.beta = -slope;
  fallback.residual_rms = std::sqrt(sse_at(s, y, fallback.gamma, fallback.beta) / n);

  // Damped Gauss-Newton refinement on (gamma, beta).
  double gamma = fallback.gamma;
  double beta = fallback.beta;
  double sse = sse_at(s, y, gamma, beta);
  double lambda = 1e-3;
  bool converged = false;
  for (int iter = 0; iter < 200 && !converged; ++iter) {
    double jgg = 0.0;
    double jgb = 0.0;
    double jbb = 0.0;
    double rg = 0.0;
    double rb = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double e = std::exp(-beta * s[i]);
      const double r = gamma * e - y[i];
      const double jg = e;                  // d r / d gamma
      const double jb = -gamma * s[i] * e;  // d r / d beta
      jgg += jg * jg;
      jgb += jg * jb;
      jbb += jb * jb;
      rg += jg * r;
      rb += jb * r;
    }
    bool accepted = false;
    double dg = 0.0;
    double db = 0.0;
    for (int tries = 0; tries < 40 && !accepted; ++tries) {
      const double agg = jgg * (1.0 + lambda);
      const double abb = jbb * (1.0 + lambda);
      const double den = agg * abb - jgb * jgb;
      if (den == 0.0 || !std::isfinite(den)) {
        lambda *= 10.0;
        continue;
      }
      dg = (-rg * abb + rb * jgb) / den;
      db = (-rb * agg + rg * jgb) / den;
      const double gamma_c = gamma + dg;
      const double beta_c = beta + db;
      if (!std::isfinite(gamma_c) || !std::isfinite(beta_c)) {
        lambda *= 10.0;
        continue;
      }
      const double sse_c = sse_at(s, y, gamma_c, beta_c);
      if (sse_c <= sse) {
        gamma = gamma_c;
        beta = beta_c;
        sse = sse_c;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted)
      throw FitFailure("stats: exponential fit stalled without converging", fallback);
    const double rel = std::max(std::fabs(dg) / (std::fabs(gamma) + 1e-300),
                                std::fabs(db) / (std::fabs(beta) + 1e-300));
    converged = rel < 1e-10;
  }
  if (!converged)
    throw FitFailure("stats: exponential fit did not converge in 200 iterations", fallback);
  if (!(gamma > 0.0) || !(beta > 0.0) || !std::isfinite(gamma) || !std::isfinite(beta))
    throw FitFailure("stats: exponential fit converged to nonpositive parameters", fallback);
  return {gamma, beta, std::sqrt(sse / n)};
}

SpacingHistogram rescale(const SpacingHistogram& h, const ExponentialFit& f) {
  if (!(f.gamma > 0.0) || !(f.beta > 0.0) || !std::isfinite(f.gamma) || !std::isfinite(f.beta))
    throw std::domain_error("stats: rescale needs positive finite fit parameters");
  SpacingHistogram out = h;
  for (double& e : out.edges) e *= f.beta;
  for (double& d : out.densities) d /= f.gamma;
  return out;
}

double reference_poisson(double s) {
  if (s < 0.0) throw std::domain_error("stats: reference law evaluated at negative spacing");
  return std::exp(-s);
}

double reference_wigner(double s) {
  if (s < 0.0) throw std::domain_error("stats: reference law evaluated at negative spacing");
  return 0.5 * std::numbers::pi * s * std::exp(-0.25 * std::numbers::pi * s * s);
}

double distribution_distance(const SpacingSet& set, ReferenceLaw law,
                             const std::optional<ExponentialFit>& fit) {
  if (set.spacings.size() < 100)
    throw std::domain_error("stats: KS distance needs at least 100 spacings");
  double scale;
  if (law == ReferenceLaw::Poisson && fit.has_value()) {
    if (!(fit->beta > 0.0) || !std::isfinite(fit->beta))
      throw std::domain_error("stats: KS rescaling needs a positive finite beta");
    scale = fit->beta;
  } else {
    double mean = 0.0;
    for (double v : set.spacings) mean += v;
    mean /= static_cast<double>(set.spacings.size());
    if (!(mean > 0.0)) throw std::domain_error("stats: KS normalization needs a positive mean");
    scale = 1.0 / mean;
  }
  std::vector<double> x = set.spacings;
  for (double& v : x) v *= scale;
  std::sort(x.begin(), x.end());
  const double nn = static_cast<double>(x.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = (law == ReferenceLaw::Poisson)
                         ? 1.0 - std::exp(-x[i])
                         : 1.0 - std::exp(-0.25 * std::numbers::pi * x[i] * x[i]);
    dist = std::max(dist, std::fabs(f - static_cast<double>(i) / nn));
    dist = std::max(dist, std::fabs(static_cast<double>(i + 1) / nn - f));
  }
  return dist;
}

}  // namespace becstat::stats
