#include <doctest.h>

#include "hardy/errors.hpp"
#include "hardy/io.hpp"
#include "hardy/linalg.hpp"
#include "hardy/scenario.hpp"
#include "test_util.hpp"

using namespace hardy;
using namespace hardy::testutil;

TEST_CASE("hermitian_eig diagonal matrix") {
  CMat h = CMat::Zero(3, 3);
  h(0, 0) = 3;
  h(1, 1) = -1;
  h(2, 2) = 2;
  const auto eig = hermitian_eig(h);
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1));
  CHECK(eig.eigenvalues(1) == doctest::Approx(2));
  CHECK(eig.eigenvalues(2) == doctest::Approx(3));
  // standard basis vectors, reordered by eigenvalue
  CHECK(std::abs(eig.eigenvectors.vectors(1, 0) - 1.0) < 1e-12);
  CHECK(std::abs(eig.eigenvectors.vectors(2, 1) - 1.0) < 1e-12);
  CHECK(std::abs(eig.eigenvectors.vectors(0, 2) - 1.0) < 1e-12);
}

TEST_CASE("hermitian_eig 2x2 symmetric flip") {
  CMat h(2, 2);
  h << 0, 1, 1, 0;
  const auto eig = hermitian_eig(h);
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1));
  const double r = 1 / std::sqrt(2.0);
  CHECK(std::abs(eig.eigenvectors.vectors(0, 0) - r) < 1e-12);
  CHECK(std::abs(eig.eigenvectors.vectors(1, 0) + r) < 1e-12);
  CHECK(std::abs(eig.eigenvectors.vectors(0, 1) - r) < 1e-12);
  CHECK(std::abs(eig.eigenvectors.vectors(1, 1) - r) < 1e-12);
}

TEST_CASE("hermitian_eig reconstruction on seeded random matrices") {
  std::mt19937_64 gen(314159);
  for (Eigen::Index dim : {2, 5, 9, 17, 25}) {
    const CMat h = random_hermitian(dim, gen);
    const auto eig = hermitian_eig(h);
    const CMat v = eig.eigenvectors.vectors;
    const CMat rebuilt =
        v * eig.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
        v.adjoint();
    const double scale = std::max(1.0, max_abs(h));
    CHECK(max_abs(h - rebuilt) < 1e-10 * scale);
    CHECK(max_abs(v.adjoint() * v - CMat::Identity(dim, dim)) < 1e-10);
    // phase convention: first significant component real positive
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (std::abs(v(i, j)) > kPhaseTol) {
          CHECK(std::abs(v(i, j).imag()) < 1e-10);
          CHECK(v(i, j).real() > 0);
          break;
        }
      }
    }
  }
}

TEST_CASE("hermitian_eig handles degenerate spectra deterministically") {
  std::mt19937_64 gen(99);
  // unitary conjugate of diag(1,1,1,2) has a 3-fold degenerate eigenvalue
  const CMat h0 = random_hermitian(4, gen);
  const CMat u = hermitian_eig(h0).eigenvectors.vectors;
  RVec d(4);
  d << 1, 1, 1, 2;
  const CMat h =
      u * d.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint();
  const auto e1 = hermitian_eig(h);
  const auto e2 = hermitian_eig(h);
  CHECK(max_abs(e1.eigenvectors.vectors - e2.eigenvectors.vectors) == 0.0);
  const CMat v = e1.eigenvectors.vectors;
  CHECK(max_abs(v.adjoint() * v - CMat::Identity(4, 4)) < 1e-10);
  CHECK(max_abs(h - v *
                        e1.eigenvalues.asDiagonal().toDenseMatrix()
                            .cast<Complex>() *
                        v.adjoint()) < 1e-10);
}

TEST_CASE("hermitian_eig rejects bad input") {
  CHECK_THROWS_AS(hermitian_eig(CMat::Zero(2, 3)), PreconditionError);
  CMat h(2, 2);
  h << 1, 2, 3, 4;  // not Hermitian
  CHECK_THROWS_AS(hermitian_eig(h), PreconditionError);
}

TEST_CASE("numeric_rank basics") {
  CVec e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  CHECK(numeric_rank({e0, e1}) == 2);
  CHECK(numeric_rank({e0, 2.0 * e0}) == 1);
  CHECK(numeric_rank({CVec::Zero(3), CVec::Zero(3)}) == 0);
  CHECK(numeric_rank({}) == 0);
  CHECK_THROWS_AS(numeric_rank({e0, CVec::Zero(3)}), PreconditionError);
  CHECK_THROWS_AS(numeric_rank({e0}, 0.0), PreconditionError);
}

TEST_CASE("numeric_rank of the relaxed spin-1 constraint vectors is 5") {
  const Scenario sc = generic_scenario(2, 2, 12345);
  const auto cs = relaxed_constraints(sc);
  REQUIRE(cs.zero_vectors.size() == 5);
  CHECK(numeric_rank(cs.vectors()) == 5);
}

TEST_CASE("orthonormal_complement basics") {
  CVec e0(2);
  e0 << 1, 0;
  const auto comp = orthonormal_complement({e0}, 2);
  REQUIRE(comp.size() == 1);
  CHECK(std::abs(comp.vectors(0, 0)) < 1e-14);
  CHECK(std::abs(comp.vectors(1, 0) - 1.0) < 1e-12);

  const auto full = orthonormal_complement({}, 3);
  CHECK(full.size() == 3);
  CHECK(max_abs(full.vectors - CMat::Identity(3, 3)) == 0.0);
}

TEST_CASE("orthonormal_complement of the relaxed spin-1 set has size 4") {
  const Scenario sc = generic_scenario(2, 2, 777);
  const auto cs = relaxed_constraints(sc);
  const auto comp = orthonormal_complement(cs.vectors(), sc.ambient_dim());
  CHECK(comp.size() == 4);
  for (const auto& tv : cs.zero_vectors) {
    CHECK((comp.vectors.adjoint() * tv.vector).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(max_abs(comp.vectors.adjoint() * comp.vectors - CMat::Identity(4, 4)) <
        1e-10);
}

TEST_CASE("rank-nullity over random vector sets") {
  std::mt19937_64 gen(2024);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index dim = 3 + static_cast<Eigen::Index>(gen() % 10);
    const auto count = static_cast<std::size_t>(1 + gen() % 7);
    std::vector<CVec> vs;
    for (std::size_t i = 0; i < count; ++i) vs.push_back(random_unit(dim, gen));
    if (count >= 2 && gen() % 2 == 0) vs.push_back(vs[0] - 0.5 * vs[1]);
    const auto r = numeric_rank(vs);
    const auto comp = orthonormal_complement(vs, dim);
    CHECK(comp.size() + r == dim);
  }
}

TEST_CASE("project_onto_span") {
  std::mt19937_64 gen(55);
  const CVec b = random_unit(4, gen);
  SubspaceBasis basis{b, 4, kDefaultRankTol};

  SUBCASE("vector in the span maps to itself") {
    const CVec v = Complex(0.3, -0.7) * b;
    CHECK((project_onto_span(v, basis) - v).norm() < 1e-12);
  }
  SUBCASE("orthogonal vector maps to zero") {
    const auto comp = orthonormal_complement({b}, 4);
    const CVec v = comp.vectors.col(0);
    CHECK(project_onto_span(v, basis).norm() < 1e-12);
  }
  SUBCASE("rank-1 formula") {
    const CVec v = random_unit(4, gen);
    const CVec expect = b.dot(v) * b;
    CHECK((project_onto_span(v, basis) - expect).norm() < 1e-12);
  }
  SUBCASE("idempotent") {
    const CVec v = random_unit(4, gen);
    const CVec once = project_onto_span(v, basis);
    CHECK((project_onto_span(once, basis) - once).norm() < 1e-12);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(project_onto_span(random_unit(3, gen), basis),
                    PreconditionError);
  }
}

TEST_CASE("projections onto a span and its complement sum to the identity") {
  std::mt19937_64 gen(808);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Index dim = 5;
    std::vector<CVec> vs{random_unit(dim, gen), random_unit(dim, gen)};
    const auto comp = orthonormal_complement(vs, dim);
    std::vector<CVec> comp_cols;
    for (Eigen::Index j = 0; j < comp.size(); ++j) {
      comp_cols.push_back(comp.vectors.col(j));
    }
    const auto span = orthonormal_complement(comp_cols, dim);
    const CVec v = random_unit(dim, gen);
    const CVec sum = project_onto_span(v, span) + project_onto_span(v, comp);
    CHECK((sum - v).norm() < 1e-10);
  }
}
