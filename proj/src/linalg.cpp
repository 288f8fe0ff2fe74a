#include "hardy/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

Eigen::Index first_significant_row(const CVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kPhaseTol) return i;
  }
  return v.size();
}

// Stacks vectors as columns after checking they share one ambient dimension.
CMat stack_columns(const std::vector<CVec>& vectors) {
  if (vectors.empty()) return CMat(0, 0);
  const Eigen::Index dim = vectors.front().size();
  CMat m(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != dim) {
      throw PreconditionError("vector set has mismatched dimensions");
    }
    m.col(static_cast<Eigen::Index>(k)) = vectors[k];
  }
  return m;
}

// Two-pass modified Gram-Schmidt on a column block, in place.
void reorthonormalize(Eigen::Ref<CMat> block) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < block.cols(); ++j) {
      for (Eigen::Index k = 0; k < j; ++k) {
        block.col(j) -= block.col(k).dot(block.col(j)) * block.col(k);
      }
      const double nrm = block.col(j).norm();
      if (nrm > 0) block.col(j) /= nrm;
    }
  }
}

}  // namespace

bool is_hermitian(const CMat& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void fix_phase(Eigen::Ref<CVec> v) {
  const Eigen::Index i = first_significant_row(v);
  if (i == v.size()) return;
  v *= std::conj(v(i)) / std::abs(v(i));
}

EigResult hermitian_eig(const CMat& h) {
  if (h.rows() != h.cols()) {
    throw PreconditionError("hermitian_eig: matrix is not square");
  }
  if (h.size() > 0 && !is_hermitian(h, 1e-10)) {
    throw PreconditionError("hermitian_eig: matrix is not Hermitian");
  }

  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success) {
    throw InternalConsistencyError("hermitian_eig: eigensolver failed");
  }
  RVec values = solver.eigenvalues();
  CMat vectors = solver.eigenvectors();

  const Eigen::Index n = values.size();
  Eigen::Index lo = 0;
  while (lo < n) {
    Eigen::Index hi = lo;
    while (hi + 1 < n && values(hi + 1) - values(hi) < 1e-9) ++hi;
    if (hi > lo) {
      auto block = vectors.middleCols(lo, hi - lo + 1);
      reorthonormalize(block);
      for (Eigen::Index j = 0; j < block.cols(); ++j) fix_phase(block.col(j));
      // deterministic order inside the cluster
      std::vector<Eigen::Index> order(static_cast<std::size_t>(hi - lo + 1));
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](Eigen::Index a, Eigen::Index b) {
                         return first_significant_row(block.col(a)) <
                                first_significant_row(block.col(b));
                       });
      CMat sorted(block.rows(), block.cols());
      for (Eigen::Index j = 0; j < block.cols(); ++j) {
        sorted.col(j) = block.col(order[static_cast<std::size_t>(j)]);
      }
      block = sorted;
    }
    lo = hi + 1;
  }
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) fix_phase(vectors.col(j));

  EigResult out;
  out.eigenvalues = std::move(values);
  out.eigenvectors = SubspaceBasis{std::move(vectors), n, 0.0};
  return out;
}

Eigen::Index numeric_rank(const std::vector<CVec>& vectors, double tol) {
  if (tol <= 0) throw PreconditionError("numeric_rank: tol must be positive");
  if (vectors.empty()) return 0;
  const CMat m = stack_columns(vectors);
  const Eigen::JacobiSVD<CMat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0) return 0;
  const double cut = tol * sv(0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return rank;
}

SubspaceBasis orthonormal_complement(const std::vector<CVec>& vectors,
                                     Eigen::Index ambient_dim, double tol) {
  if (ambient_dim < 1) {
    throw PreconditionError("orthonormal_complement: ambient_dim must be >= 1");
  }
  if (tol <= 0) {
    throw PreconditionError("orthonormal_complement: tol must be positive");
  }
  if (vectors.empty()) {
    return SubspaceBasis{CMat::Identity(ambient_dim, ambient_dim), ambient_dim,
                         tol};
  }
  const CMat m = stack_columns(vectors);
  if (m.rows() != ambient_dim) {
    throw PreconditionError(
        "orthonormal_complement: vectors do not live in the ambient space");
  }
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  if (sv.size() > 0 && sv(0) > 0) {
    const double cut = tol * sv(0);
    while (rank < sv.size() && sv(rank) > cut) ++rank;
  }
  CMat comp = svd.matrixU().rightCols(ambient_dim - rank);
  for (Eigen::Index j = 0; j < comp.cols(); ++j) fix_phase(comp.col(j));
  return SubspaceBasis{std::move(comp), ambient_dim, tol};
}

CVec project_onto_span(const Eigen::Ref<const CVec>& v,
                       const SubspaceBasis& basis) {
  if (v.size() != basis.ambient_dim || basis.vectors.rows() != v.size()) {
    throw PreconditionError("project_onto_span: dimension mismatch");
  }
  if (basis.size() == 0) return CVec::Zero(v.size());
  return basis.vectors * (basis.vectors.adjoint() * v);
}

}  // namespace hardy
