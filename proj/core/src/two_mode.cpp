#include "becstat/two_mode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace becstat::two_mode {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_couplings(const TwoModeCouplings& c) {
  for (double v : {c.u11, c.u22, c.u12, c.mu1, c.mu2, c.ej})
    if (!std::isfinite(v)) throw std::domain_error("two_mode: nonfinite coupling");
}

void check_sector(std::int64_t n) {
  if (n < 0) throw std::domain_error("two_mode: sector size must be >= 0");
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Number of eigenvalues strictly below the trial energy, read off the sign
// pattern of the recursion. alpha_m relates to the leading m x m principal
// minor of (H - E) by the positive factor (2/ej)^m / m!, so flipping the
// sign of alpha_m by sign(ej)^m recovers the minor's sign and the usual
// Sturm count applies.
int count_below(const RecursionState& st, double ej) {
  const int se = sign_of(ej);
  int flips = 0;
  int prev = 1;  // alpha_0 = 1
  int sepow = 1;
  for (std::size_t m = 1; m < st.alphas.size(); ++m) {
    sepow *= se;
    const int b = st.alphas[m].sign * sepow;
    if (b != prev) ++flips;
    prev = b;
  }
  return flips;
}

// Add two signed-log numbers. Used by the eigenvector recursion, which runs
// the three-term recurrence directly (no continued fraction, no division).
SignedLog signed_log_add(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const double hi = std::max(a.log_abs, b.log_abs);
  const double r = a.sign * std::exp(a.log_abs - hi) + b.sign * std::exp(b.log_abs - hi);
  if (r == 0.0) return {0, 0.0};
  return {sign_of(r), hi + std::log(std::fabs(r))};
}

SignedLog signed_log_scale(const SignedLog& a, double factor) {
  if (a.sign == 0 || factor == 0.0) return {0, 0.0};
  return {a.sign * sign_of(factor), a.log_abs + std::log(std::fabs(factor))};
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Rabi: return "rabi";
    case Regime::Josephson: return "josephson";
    case Regime::Fock: return "fock";
    case Regime::Unclassified: return "unclassified";
  }
  return "unclassified";
}

double diag_element(const TwoModeCouplings& c, std::int64_t n, std::int64_t m) {
  check_couplings(c);
  check_sector(n);
  if (m < 0 || m > n) throw std::domain_error("two_mode: basis index out of range");
  const double n1 = static_cast<double>(n - m);
  const double n2 = static_cast<double>(m);
  return c.u11 * n1 * n1 + c.u12 * n1 * n2 + c.u22 * n2 * n2 + c.mu1 * n1 + c.mu2 * n2;
}

linalg::SymTridiagonal build_sector(const TwoModeCouplings& c, std::int64_t n) {
  check_couplings(c);
  check_sector(n);
  linalg::SymTridiagonal t;
  t.diag.resize(static_cast<std::size_t>(n) + 1);
  t.offdiag.resize(static_cast<std::size_t>(n));
  for (std::int64_t m = 0; m <= n; ++m)
    t.diag[static_cast<std::size_t>(m)] = diag_element(c, n, m);
  for (std::int64_t m = 0; m < n; ++m)
    t.offdiag[static_cast<std::size_t>(m)] =
        -0.5 * c.ej * std::sqrt(static_cast<double>(m + 1) * static_cast<double>(n - m));
  return t;
}

std::vector<double> spectrum(const TwoModeCouplings& c, std::int64_t n) {
  return linalg::eigen_sym_tridiag(build_sector(c, n));
}

RecursionState evaluate_recursion(const TwoModeCouplings& c, std::int64_t n, double e) {
  check_couplings(c);
  check_sector(n);
  if (c.ej == 0.0)
    throw IntegrableDegenerate("two_mode: recursion undefined at ej = 0 (sector is diagonal)");
  if (!std::isfinite(e)) throw std::domain_error("two_mode: nonfinite trial energy");

  RecursionState st;
  st.e_trial = e;
  st.alphas.reserve(static_cast<std::size_t>(n) + 2);
  st.ys.reserve(static_cast<std::size_t>(n) + 1);
  st.alphas.push_back({1, 0.0});  // alpha_0 = 1

  int sign = 1;
  double log_abs = 0.0;
  double x_prev = 0.0;
  double y_prev = 1.0;
  for (std::int64_t m = 0; m <= n; ++m) {
    const double x = 2.0 * (diag_element(c, n, m) - e) /
                     (c.ej * static_cast<double>(m + 1));
    if (x == 0.0)
      throw BreakdownAtTrialEnergy("two_mode: X factor vanished in recursion", e, m);
    double y = 1.0;
    if (m > 0) {
      y = 1.0 + static_cast<double>(m - n - 1) /
                    (static_cast<double>(m + 1) * x * x_prev * y_prev);
      if (!std::isfinite(y))
        throw BreakdownAtTrialEnergy("two_mode: Y factor overflowed in recursion", e, m);
      if (y == 0.0)
        throw BreakdownAtTrialEnergy("two_mode: Y factor vanished in recursion", e, m);
    }
    sign *= sign_of(x) * sign_of(y);
    log_abs += std::log(std::fabs(x)) + std::log(std::fabs(y));
    st.ys.push_back(y);
    st.alphas.push_back({sign, log_abs});
    x_prev = x;
    y_prev = y;
  }
  return st;
}

SignedLog alpha_top(const TwoModeCouplings& c, std::int64_t n, double e) {
  return evaluate_recursion(c, n, e).alphas.back();
}

std::vector<double> spectrum_via_recursion(const TwoModeCouplings& c, std::int64_t n) {
  check_couplings(c);
  check_sector(n);
  if (c.ej == 0.0)
    throw IntegrableDegenerate("two_mode: recursion solver requires ej != 0");
  if (n == 0) return {diag_element(c, 0, 0)};

  const auto gb = linalg::gershgorin_bounds(build_sector(c, n));
  const double width = gb.width();  // > 0: nonzero ej gives nonzero offdiagonals
  const double nudge = 4.0 * kEps * width;
  const std::size_t d = static_cast<std::size_t>(n) + 1;

  // Breakdowns are measure-zero in e; retry on a small alternating ladder of
  // offsets before giving up on a probe energy.
  const auto with_retries = [&](double e, auto&& f) {
    for (int k = 0;; ++k) {
      const double offset = (k + 1) / 2 * ((k % 2) ? -nudge : nudge);
      try {
        return f(e + offset);
      } catch (const BreakdownAtTrialEnergy&) {
        if (k >= 8) throw;
      }
    }
  };
  const auto count_at = [&](double e) {
    return with_retries(e, [&](double probe) {
      return count_below(evaluate_recursion(c, n, probe), c.ej);
    });
  };
  const auto sign_at = [&](double e) {
    return with_retries(e, [&](double probe) { return alpha_top(c, n, probe).sign; });
  };

  const auto diagnostic_grid = [&](double lo, double hi) {
    std::vector<std::pair<double, int>> grid;
    for (int i = 0; i <= 32; ++i) {
      const double e = lo + (hi - lo) * i / 32.0;
      int cnt = -1;
      try {
        cnt = count_at(e);
      } catch (const BreakdownAtTrialEnergy&) {
      }
      grid.emplace_back(e, cnt);
    }
    return grid;
  };

  double lo = gb.lower - 1e-3 * width;
  double hi = gb.upper + 1e-3 * width;
  if (count_at(lo) != 0 || count_at(hi) != static_cast<int>(d)) {
    lo = gb.lower - 0.05 * width;
    hi = gb.upper + 0.05 * width;
    if (count_at(lo) != 0 || count_at(hi) != static_cast<int>(d)) {
      std::ostringstream msg;
      msg << "two_mode: recursion counts do not bracket the spectrum on ["
          << lo << ", " << hi << "]";
      throw BracketingFailure(msg.str(), diagnostic_grid(lo, hi));
    }
  }

  const double tol = 1e-11 * width;
  std::vector<double> lower(d, lo);
  std::vector<double> upper(d, hi);
  const auto prune = [&](double mid, int cnt) {
    const std::size_t cc = static_cast<std::size_t>(std::clamp(cnt, 0, static_cast<int>(d)));
    for (std::size_t j = cc; j < d && lower[j] < mid; ++j) lower[j] = mid;
    for (std::size_t j = cc; j-- > 0 && upper[j] > mid;) upper[j] = mid;
  };

  std::vector<double> vals(d);
  for (std::size_t k = 0; k < d; ++k) {
    double a = lower[k];
    double b = upper[k];
    int ca = count_at(a);
    int cb = count_at(b);
    // Phase 1: shrink until [a, b] contains eigenvalue k alone.
    int iter = 0;
    while (!(ca == static_cast<int>(k) && cb == static_cast<int>(k) + 1) && (b - a) > tol) {
      if (++iter > 200) {
        std::ostringstream msg;
        msg << "two_mode: failed to isolate eigenvalue " << k << " in [" << a << ", " << b
            << "]";
        throw BracketingFailure(msg.str(), diagnostic_grid(lo, hi));
      }
      const double mid = 0.5 * (a + b);
      const int cm = count_at(mid);
      if (cm <= static_cast<int>(k)) {
        a = mid;
        ca = cm;
      } else {
        b = mid;
        cb = cm;
      }
      prune(mid, cm);
    }
    // Phase 2: the root is simple, so alpha_top changes sign across it.
    if ((b - a) > tol) {
      const int sa = sign_at(a);
      if (sa != sign_at(b)) {
        while ((b - a) > tol) {
          const double mid = 0.5 * (a + b);
          if (sign_at(mid) == sa) {
            a = mid;
          } else {
            b = mid;
          }
        }
      } else {
        // Nudged endpoint signs can disagree with the counts right next to a
        // root; counts alone still pin the eigenvalue.
        while ((b - a) > tol) {
          const double mid = 0.5 * (a + b);
          const int cm = count_at(mid);
          if (cm <= static_cast<int>(k)) {
            a = mid;
          } else {
            b = mid;
          }
          prune(mid, cm);
        }
      }
    }
    vals[k] = 0.5 * (a + b);
    if (k > 0 && vals[k] < vals[k - 1]) vals[k] = vals[k - 1];
  }
  return vals;
}

std::vector<double> eigenvector(const TwoModeCouplings& c, std::int64_t n, double e) {
  check_couplings(c);
  check_sector(n);
  if (c.ej == 0.0)
    throw IntegrableDegenerate("two_mode: recursion eigenvector requires ej != 0");
  if (!std::isfinite(e)) throw std::domain_error("two_mode: nonfinite energy");

  const auto t = build_sector(c, n);
  const auto gb = linalg::gershgorin_bounds(t);
  const double width = gb.width();
  const double delta = 1e-6 * width + 1e-12 * (1.0 + std::fabs(e));
  if (linalg::sturm_count(t, e + delta) - linalg::sturm_count(t, e - delta) < 1)
    throw NotAnEigenvalue("two_mode: energy is not within tolerance of a sector eigenvalue");
  if (n == 0) return {1.0};

  const std::size_t d = static_cast<std::size_t>(n) + 1;
  const auto x_at = [&](std::int64_t m) {
    return 2.0 * (diag_element(c, n, m) - e) / (c.ej * static_cast<double>(m + 1));
  };
  const auto back_coef = [&](std::int64_t m) {
    return static_cast<double>(m - n - 1) / static_cast<double>(m + 1);
  };

  // The amplitude profile peaks where the diagonal crosses e; running the
  // three-term recurrence toward that turning point from both ends keeps the
  // wanted (growing) solution dominant on each side. A forward-only sweep
  // would drown the decaying tail of localized states in rounding noise.
  std::size_t junction = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < d; ++m) {
    const double gap = std::fabs(t.diag[m] - e);
    if (gap < best) {
      best = gap;
      junction = m;
    }
  }

  std::vector<SignedLog> fwd(d);
  fwd[0] = {1, 0.0};
  if (d > 1 && junction > 0) {
    SignedLog prev{0, 0.0};  // alpha_{-1} = 0
    for (std::size_t m = 0; m < junction; ++m) {
      const SignedLog next =
          signed_log_add(signed_log_scale(fwd[m], x_at(static_cast<std::int64_t>(m))),
                         signed_log_scale(prev, back_coef(static_cast<std::int64_t>(m))));
      prev = fwd[m];
      fwd[m + 1] = next;
    }
  }
  std::vector<SignedLog> bwd(d);
  bwd[d - 1] = {1, 0.0};
  if (junction + 1 < d) {
    // alpha_{m-1} = (alpha_{m+1} - X_m alpha_m) / back_coef(m), with the
    // boundary alpha_{n+1} = 0 built in at the first step.
    SignedLog above{0, 0.0};
    for (std::size_t m = d - 1; m > junction; --m) {
      const SignedLog rhs = signed_log_add(
          above, signed_log_scale(bwd[m], -x_at(static_cast<std::int64_t>(m))));
      bwd[m - 1] = signed_log_scale(rhs, 1.0 / back_coef(static_cast<std::int64_t>(m)));
      above = bwd[m];
    }
  }

  // Splice: scale the backward half so both halves agree at the junction.
  std::vector<SignedLog> alpha(d);
  for (std::size_t m = 0; m <= junction; ++m) alpha[m] = fwd[m];
  if (junction + 1 < d) {
    if (fwd[junction].sign == 0 || bwd[junction].sign == 0)
      throw std::runtime_error("two_mode: eigenvector junction amplitude vanished");
    const double shift = fwd[junction].log_abs - bwd[junction].log_abs;
    const int flip = fwd[junction].sign * bwd[junction].sign;
    for (std::size_t m = junction + 1; m < d; ++m)
      alpha[m] = {bwd[m].sign * flip, bwd[m].log_abs + shift};
  }

  // Basis components carry sqrt(m! (n-m)!) on top of alpha_m (up to a global
  // factor that normalization removes).
  std::vector<double> logc(d);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < d; ++m) {
    logc[m] = alpha[m].log_abs +
              0.5 * (std::lgamma(static_cast<double>(m) + 1.0) +
                     std::lgamma(static_cast<double>(n - static_cast<std::int64_t>(m)) + 1.0));
    if (alpha[m].sign != 0) top = std::max(top, logc[m]);
  }
  std::vector<double> v(d);
  double norm2 = 0.0;
  for (std::size_t m = 0; m < d; ++m) {
    v[m] = (alpha[m].sign == 0) ? 0.0 : alpha[m].sign * std::exp(logc[m] - top);
    norm2 += v[m] * v[m];
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& vm : v) vm *= inv;
  return v;
}

Regime classify_regime(const TwoModeCouplings& c, std::int64_t n) {
  check_couplings(c);
  if (n < 1) throw std::domain_error("two_mode: regime classification needs n >= 1");
  if (c.ej == 0.0) return Regime::Fock;
  const double v1 = c.u11;
  const double v2 = c.u22;
  const double v3 = -0.5 * c.u12;
  const double u = (std::fabs(v1) + std::fabs(v2) + std::fabs(v3)) / 3.0;
  if (u > 0.0) {
    const double spread = (std::max({v1, v2, v3}) - std::min({v1, v2, v3})) / u;
    if (spread > 0.5) return Regime::Unclassified;
  }
  const double ratio = u / std::fabs(c.ej);
  const double nn = static_cast<double>(n);
  if (ratio < 1.0 / nn) return Regime::Rabi;
  if (ratio > nn) return Regime::Fock;
  return Regime::Josephson;
}

}  // namespace becstat::two_mode
