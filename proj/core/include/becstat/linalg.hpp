#pragma once

#include <cstddef>
#include <vector>

namespace becstat::linalg {

// Symmetric tridiagonal matrix. diag holds the d diagonal entries,
// offdiag the d-1 entries directly below (= above) the diagonal.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }
};

// Dense symmetric matrix, row-major full storage. Mutation goes through
// set()/add(), which write both mirror entries, so a matrix built this way
// is symmetric by construction rather than symmetrized after the fact.
class SymDense {
 public:
  SymDense() = default;
  explicit SymDense(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}

  // Adopts arbitrary row data; the solvers reject it later if it is not
  // exactly symmetric. Throws std::domain_error on ragged input.
  static SymDense from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double value);
  void add(std::size_t i, std::size_t j, double value);
  const std::vector<double>& entries() const { return entries_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> entries_;
};

// Embed a tridiagonal matrix in dense storage. Mostly useful for
// cross-checking the two solver paths against each other.
SymDense to_dense(const SymTridiagonal& m);

struct GershgorinBounds {
  double lower;
  double upper;
  double width() const { return upper - lower; }
};

// Interval certain to contain the whole spectrum (union of Gershgorin discs).
GershgorinBounds gershgorin_bounds(const SymTridiagonal& m);

// Number of eigenvalues of m strictly below x, from the signs of the Sturm
// sequence of leading-minor characteristic polynomials. Nondecreasing in x.
int sturm_count(const SymTridiagonal& m, double x);

// All eigenvalues in nondecreasing order, by bisection on sturm_count.
// When every offdiagonal entry is zero the sorted diagonal is returned
// exactly. Converges to ~1e-12 of the Gershgorin width per eigenvalue.
std::vector<double> eigen_sym_tridiag(const SymTridiagonal& m);

// Eigenvalues of a dense symmetric matrix: Householder reduction to
// tridiagonal form followed by eigen_sym_tridiag.
std::vector<double> eigen_sym_dense(const SymDense& a);

struct DenseEigenDecomposition {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major d*d; column j pairs with values[j]
};

// Eigenvalues plus orthonormal eigenvectors: Householder reduction with
// accumulated transforms, then implicit-shift QL on the tridiagonal form.
DenseEigenDecomposition eigen_sym_dense_with_vectors(const SymDense& a);

}  // namespace becstat::linalg
