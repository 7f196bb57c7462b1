#include "becstat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace becstat::linalg {

namespace {

void check_tridiagonal(const SymTridiagonal& m) {
  if (m.diag.empty()) throw std::domain_error("linalg: tridiagonal matrix must have dimension >= 1");
  if (m.offdiag.size() + 1 != m.diag.size())
    throw std::domain_error("linalg: offdiag length must be diag length - 1");
  for (double v : m.diag)
    if (!std::isfinite(v)) throw std::domain_error("linalg: nonfinite diagonal entry");
  for (double v : m.offdiag)
    if (!std::isfinite(v)) throw std::domain_error("linalg: nonfinite offdiagonal entry");
}

void check_dense(const SymDense& a) {
  const std::size_t d = a.size();
  if (d == 0) throw std::domain_error("linalg: dense matrix must have dimension >= 1");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      if (!std::isfinite(a(i, j)) || !std::isfinite(a(j, i)))
        throw std::domain_error("linalg: nonfinite matrix entry");
      if (a(i, j) != a(j, i))
        throw std::domain_error("linalg: matrix is not symmetric at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
    }
}

// Reduce the symmetric matrix in `a` (row-major, full storage) to
// tridiagonal form, values-only variant. Each Householder step applies
// A <- A - v w^T - w v^T to the remaining leading block; both triangles of
// the block are kept up to date so every inner loop walks rows contiguously.
// That doubles the update flops relative to triangle-only bookkeeping but
// avoids the stride-d column walks that dominate runtime for large d.
void householder_values(std::vector<double>& a, std::size_t d,
                        std::vector<double>& dg, std::vector<double>& sb) {
  dg.assign(d, 0.0);
  sb.assign(d, 0.0);
  if (d == 1) {
    dg[0] = a[0];
    return;
  }
  std::vector<double> w(d);
  for (std::size_t i = d - 1; i >= 2; --i) {
    double* const vi = &a[i * d];  // row i holds the reflector vector
    const std::size_t l = i - 1;
    double scale = 0.0;
    for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(vi[k]);
    if (scale == 0.0) {
      sb[i] = vi[l];
      continue;
    }
    double h = 0.0;
    for (std::size_t k = 0; k <= l; ++k) {
      vi[k] /= scale;
      h += vi[k] * vi[k];
    }
    double f = vi[l];
    const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
    sb[i] = scale * g;
    h -= f * g;  // h = |v|^2 / 2 after the l-th component becomes f - g
    vi[l] = f - g;
    // p = A v / h over the leading block, then w = p - (v.p / 2h) v
    double vdotp = 0.0;
    for (std::size_t j = 0; j <= l; ++j) {
      const double* const row = &a[j * d];
      double s = 0.0;
      for (std::size_t k = 0; k <= l; ++k) s += row[k] * vi[k];
      w[j] = s / h;
      vdotp += vi[j] * w[j];
    }
    const double kk = vdotp / (2.0 * h);
    for (std::size_t j = 0; j <= l; ++j) w[j] -= kk * vi[j];
    for (std::size_t j = 0; j <= l; ++j) {
      const double vj = vi[j];
      const double wj = w[j];
      double* const row = &a[j * d];
      for (std::size_t k = 0; k <= l; ++k) row[k] -= vj * w[k] + wj * vi[k];
    }
  }
  sb[1] = a[1 * d + 0];
  for (std::size_t i = 0; i < d; ++i) dg[i] = a[i * d + i];
}

// Classic tred2: reduce to tridiagonal form and accumulate the orthogonal
// transform in place of `a`. Only used by the with-vectors path, which is
// meant for modest dimensions, so the triangle-only access pattern is fine.
void householder_with_q(std::vector<double>& a, std::size_t d,
                        std::vector<double>& dg, std::vector<double>& sb) {
  dg.assign(d, 0.0);
  sb.assign(d, 0.0);
  std::vector<double> hstep(d, 0.0);
  for (std::size_t i = d - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(a[i * d + k]);
      if (scale == 0.0) {
        sb[i] = a[i * d + l];
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a[i * d + k] /= scale;
          h += a[i * d + k] * a[i * d + k];
        }
        double f = a[i * d + l];
        const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        sb[i] = scale * g;
        h -= f * g;
        a[i * d + l] = f - g;
        double fsum = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          a[j * d + i] = a[i * d + j] / h;  // stash v/h for the accumulation pass
          double gsum = 0.0;
          for (std::size_t k = 0; k <= j; ++k) gsum += a[j * d + k] * a[i * d + k];
          for (std::size_t k = j + 1; k <= l; ++k) gsum += a[k * d + j] * a[i * d + k];
          sb[j] = gsum / h;
          fsum += sb[j] * a[i * d + j];
        }
        const double kk = fsum / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a[i * d + j];
          const double wj = sb[j] - kk * f;
          sb[j] = wj;
          for (std::size_t k = 0; k <= j; ++k)
            a[j * d + k] -= f * sb[k] + wj * a[i * d + k];
        }
      }
    } else {
      sb[i] = a[i * d + l];
    }
    hstep[i] = h;
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (i > 0 && hstep[i] != 0.0) {
      for (std::size_t j = 0; j < i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < i; ++k) g += a[i * d + k] * a[k * d + j];
        for (std::size_t k = 0; k < i; ++k) a[k * d + j] -= g * a[k * d + i];
      }
    }
    dg[i] = a[i * d + i];
    a[i * d + i] = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      a[j * d + i] = 0.0;
      a[i * d + j] = 0.0;
    }
  }
}

// Implicit-shift QL on a tridiagonal matrix (dg diagonal, e subdiagonal with
// e[i] between rows i and i+1). Rotations are folded into the columns of z.
void ql_implicit_shift(std::vector<double>& dg, std::vector<double>& e, std::size_t d,
                       std::vector<double>& z) {
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < d; ++l) {
    int iter = 0;
    while (true) {
      std::size_t m = l;
      while (m + 1 < d) {
        const double dd = std::fabs(dg[m]) + std::fabs(dg[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
        ++m;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("linalg: QL iteration failed to converge");
      double g = (dg[l + 1] - dg[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = dg[m] - dg[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          dg[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = dg[i + 1] - p;
        r = (dg[i] - g) * s + 2.0 * c * b;
        p = s * r;
        dg[i + 1] = g + p;
        g = c * r - b;
        for (std::size_t k = 0; k < d; ++k) {
          f = z[k * d + i + 1];
          z[k * d + i + 1] = s * z[k * d + i] + c * f;
          z[k * d + i] = c * z[k * d + i] - s * f;
        }
      }
      if (underflow) continue;
      dg[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

}  // namespace

SymDense SymDense::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t d = rows.size();
  SymDense a(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d) throw std::domain_error("linalg: from_rows needs square input");
    for (std::size_t j = 0; j < d; ++j) a.entries_[i * d + j] = rows[i][j];
  }
  return a;
}

void SymDense::set(std::size_t i, std::size_t j, double value) {
  entries_[i * dim_ + j] = value;
  entries_[j * dim_ + i] = value;
}

void SymDense::add(std::size_t i, std::size_t j, double value) {
  entries_[i * dim_ + j] += value;
  if (i != j) entries_[j * dim_ + i] += value;
}

SymDense to_dense(const SymTridiagonal& m) {
  check_tridiagonal(m);
  const std::size_t d = m.size();
  SymDense a(d);
  for (std::size_t i = 0; i < d; ++i) a.set(i, i, m.diag[i]);
  for (std::size_t i = 0; i + 1 < d; ++i) a.set(i + 1, i, m.offdiag[i]);
  return a;
}

GershgorinBounds gershgorin_bounds(const SymTridiagonal& m) {
  check_tridiagonal(m);
  const std::size_t d = m.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < d; ++i) {
    const double r = (i > 0 ? std::fabs(m.offdiag[i - 1]) : 0.0) +
                     (i + 1 < d ? std::fabs(m.offdiag[i]) : 0.0);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  return {lo, hi};
}

int sturm_count(const SymTridiagonal& m, double x) {
  check_tridiagonal(m);
  if (!std::isfinite(x)) throw std::domain_error("linalg: sturm_count at nonfinite x");
  // q_i = p_i / p_{i-1}, the ratio of consecutive leading-minor
  // characteristic polynomials at x; each negative q is an eigenvalue below x.
  // The tiny floor keeps the recurrence going through exact zeros without
  // changing any sign downstream.
  constexpr double kFloor = 1e-300;
  const std::size_t d = m.size();
  int count = 0;
  double q = m.diag[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d; ++i) {
    if (std::fabs(q) < kFloor) q = (q < 0.0) ? -kFloor : kFloor;
    const double off = m.offdiag[i - 1];
    q = (m.diag[i] - x) - off * off / q;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> eigen_sym_tridiag(const SymTridiagonal& m) {
  check_tridiagonal(m);
  const std::size_t d = m.size();
  if (std::all_of(m.offdiag.begin(), m.offdiag.end(), [](double v) { return v == 0.0; })) {
    std::vector<double> vals = m.diag;
    std::sort(vals.begin(), vals.end());
    return vals;
  }
  const GershgorinBounds gb = gershgorin_bounds(m);
  const double width = gb.width();
  // Per-index running brackets: every Sturm count computed while bisecting
  // one eigenvalue also tightens the brackets of its neighbours.
  std::vector<double> lower(d, gb.lower);
  std::vector<double> upper(d, gb.upper);
  std::vector<double> vals(d);
  for (std::size_t k = 0; k < d; ++k) {
    double a = lower[k];
    double b = upper[k];
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      if (b - a <= std::max(1e-12 * width, 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(mid)))
        break;
      const std::size_t c =
          static_cast<std::size_t>(std::clamp(sturm_count(m, mid), 0, static_cast<int>(d)));
      if (c <= k) {
        a = mid;
      } else {
        b = mid;
      }
      for (std::size_t j = c; j < d && lower[j] < mid; ++j) lower[j] = mid;
      for (std::size_t j = std::min(c, d); j-- > 0 && upper[j] > mid;) upper[j] = mid;
    }
    vals[k] = 0.5 * (a + b);
    if (k > 0 && vals[k] < vals[k - 1]) vals[k] = vals[k - 1];
  }
  return vals;
}

std::vector<double> eigen_sym_dense(const SymDense& a) {
  check_dense(a);
  const std::size_t d = a.size();
  if (d == 1) return {a(0, 0)};
  std::vector<double> work = a.entries();
  std::vector<double> dg;
  std::vector<double> sb;
  householder_values(work, d, dg, sb);
  SymTridiagonal t;
  t.diag = std::move(dg);
  t.offdiag.assign(sb.begin() + 1, sb.end());
  return eigen_sym_tridiag(t);
}

DenseEigenDecomposition eigen_sym_dense_with_vectors(const SymDense& a) {
  check_dense(a);
  const std::size_t d = a.size();
  std::vector<double> z = a.entries();
  std::vector<double> dg;
  std::vector<double> sb;
  if (d == 1) {
    return {{a(0, 0)}, {1.0}};
  }
  householder_with_q(z, d, dg, sb);
  std::vector<double> e(d, 0.0);
  for (std::size_t i = 1; i < d; ++i) e[i - 1] = sb[i];
  ql_implicit_shift(dg, e, d, z);
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&dg](std::size_t x, std::size_t y) { return dg[x] < dg[y]; });
  DenseEigenDecomposition out;
  out.values.resize(d);
  out.vectors.resize(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    out.values[j] = dg[order[j]];
    for (std::size_t i = 0; i < d; ++i) out.vectors[i * d + j] = z[i * d + order[j]];
  }
  return out;
}

}  // namespace becstat::linalg
