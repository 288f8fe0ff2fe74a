#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace hardy {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Relative singular-value threshold used for rank decisions. Constraint
// vectors are exact tensor products, so degeneracy only enters through
// special direction choices; a loose-ish threshold keeps those visible.
inline constexpr double kDefaultRankTol = 1e-9;

// Threshold below which a component does not count as "significant" when
// fixing phases or ordering degenerate eigenvectors.
inline constexpr double kPhaseTol = 1e-8;

/// Orthonormal set spanning a subspace of C^ambient_dim, one column per
/// basis vector. May be empty (zero columns).
struct SubspaceBasis {
  CMat vectors;
  Eigen::Index ambient_dim = 0;
  double tol_used = kDefaultRankTol;

  Eigen::Index size() const { return vectors.cols(); }
};

struct EigResult {
  RVec eigenvalues;  // ascending
  SubspaceBasis eigenvectors;
};

bool is_hermitian(const CMat& h, double tol = 1e-10);

/// Multiplies v by a unit phase so its first component of magnitude
/// > kPhaseTol becomes real positive. Zero vectors are left untouched.
void fix_phase(Eigen::Ref<CVec> v);

/// Full eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvectors orthonormal and phase-fixed. Eigenvalue clusters closer
/// than 1e-9 are re-orthonormalized and ordered by the row index of their
/// first significant component, so output is reproducible across runs.
/// Throws PreconditionError on non-square or non-Hermitian input.
EigResult hermitian_eig(const CMat& h);

/// Number of singular values above tol * (largest singular value).
/// All-zero (or empty) input has rank 0.
Eigen::Index numeric_rank(const std::vector<CVec>& vectors,
                          double tol = kDefaultRankTol);

/// Orthonormal basis of the orthogonal complement of span(vectors) in
/// C^ambient_dim. Empty input yields the standard basis.
SubspaceBasis orthonormal_complement(const std::vector<CVec>& vectors,
                                     Eigen::Index ambient_dim,
                                     double tol = kDefaultRankTol);

/// Orthogonal projection of v onto the span of an orthonormal basis.
CVec project_onto_span(const Eigen::Ref<const CVec>& v,
                       const SubspaceBasis& basis);

}  // namespace hardy
