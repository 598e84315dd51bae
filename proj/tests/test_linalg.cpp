#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"

using namespace garland;
using namespace garland::testing;

TEST(SymMatrix, RejectsBadInput) {
    EXPECT_THROW(SymMatrix(0), ValidationError);
    EXPECT_THROW(SymMatrix::from_rows({{1, 2}, {3, 1}}), ValidationError);
    EXPECT_THROW(SymMatrix::from_rows({{1, 2}}), ValidationError);
    EXPECT_THROW(SymMatrix::from_rows({{1, NAN}, {NAN, 1}}), ValidationError);
    EXPECT_NO_THROW(SymMatrix::from_rows({{1, 0.5}, {0.5 + 1e-13, 1}}));
}

TEST(SymEigs, Identity) {
    const Spectrum s = sym_eigs(SymMatrix::identity(3));
    ASSERT_EQ(s.eigenvalues.size(), 3u);
    for (double x : s.eigenvalues) EXPECT_NEAR(x, 1.0, 1e-15);
}

TEST(SymEigs, TwoByTwoClosedForm) {
    const Spectrum s = sym_eigs(SymMatrix::from_rows({{1, -0.5}, {-0.5, 1}}));
    EXPECT_NEAR(s.eigenvalues[0], 0.5, 1e-14);
    EXPECT_NEAR(s.eigenvalues[1], 1.5, 1e-14);
}

TEST(SymEigs, RankFourDiagramSmallestEigenvalue) {
    const Spectrum s = sym_eigs(example_rank4_cosine());
    EXPECT_NEAR(s.min(), (1 - std::sqrt(2.0)) / 2, 1e-12);
    EXPECT_NEAR(s.eigenvalues[3], 1 + 1 / std::sqrt(2.0), 1e-12);
}

TEST(SymEigs, EigenvectorResidual) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 9;
        SymMatrix m(n);
        std::uniform_real_distribution<double> u(-5, 5);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m.set(i, j, u(rng));
        const Spectrum s = sym_eigs(m, true);
        ASSERT_TRUE(s.eigenvectors.has_value());
        const double tol = 1e-9 * std::max(1.0, m.max_abs());
        EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
        for (std::size_t k = 0; k < n; ++k) {
            const Vector& q = (*s.eigenvectors)[k];
            const Vector mq = m.apply(q);
            for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(mq[i], s.eigenvalues[k] * q[i], tol);
            EXPECT_NEAR(norm(q), 1.0, 1e-12);
            for (std::size_t l = 0; l < k; ++l) EXPECT_NEAR(dot(q, (*s.eigenvectors)[l]), 0.0, 1e-12);
        }
    }
}

// Q D Q^T with known D recovers sorted D.
TEST(SymEigs, RecoversPlantedSpectrum) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 12;
        const Dense q = random_orthogonal(rng, n);
        Vector d(n);
        for (double& x : d) x = u(rng);
        if (trial % 5 == 0 && n > 2) d[1] = d[0];  // repeated eigenvalue
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double s = 0;
                for (std::size_t k = 0; k < n; ++k) s += q[k][i] * d[k] * q[k][j];
                m.set(i, j, s);
            }
        std::sort(d.begin(), d.end());
        const Spectrum s = sym_eigs(m);
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(s.eigenvalues[k], d[k], 1e-9);
    }
}

TEST(Definiteness, SpecExamples) {
    auto id = classify_definiteness(SymMatrix::identity(4));
    EXPECT_EQ(id.tag, Definiteness::positive_definite);
    EXPECT_EQ(id.corank, 0u);

    auto aff = classify_definiteness(
        SymMatrix::from_rows({{1, -0.5, -0.5}, {-0.5, 1, -0.5}, {-0.5, -0.5, 1}}));
    EXPECT_EQ(aff.tag, Definiteness::positive_semidefinite);
    EXPECT_EQ(aff.corank, 1u);

    EXPECT_EQ(classify_definiteness(example_rank4_cosine()).tag, Definiteness::indefinite);
}

TEST(Definiteness, CorankCountsZeroBand) {
    const Vector ev{-1e-12, 0.0, 3e-10, 2.0};
    auto c = classify_spectrum(ev, 1e-9);
    EXPECT_EQ(c.tag, Definiteness::positive_semidefinite);
    EXPECT_EQ(c.corank, 3u);
    EXPECT_EQ(classify_spectrum(Vector{-2e-9, 1.0}, 1e-9).tag, Definiteness::indefinite);
    EXPECT_EQ(classify_spectrum(Vector{2e-9, 1.0}, 1e-9).tag, Definiteness::positive_definite);
}

// Cholesky succeeds on M + eps I iff the class is not indefinite.
TEST(Definiteness, AgreesWithCholesky) {
    std::mt19937_64 rng(77);
    int indefinite = 0, definite = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const CosineMatrix c = random_cosine(rng, 2 + trial % 5, -0.8);
        const auto cls = classify_definiteness(c.matrix());
        const double eps = 1e-7;
        const bool chol = cholesky_succeeds(c.matrix(), eps);
        EXPECT_EQ(chol, cls.tag != Definiteness::indefinite) << "trial " << trial;
        (cls.tag == Definiteness::indefinite ? indefinite : definite)++;
    }
    EXPECT_GT(indefinite, 10);
    EXPECT_GT(definite, 10);
}

TEST(MatrixLeq, Examples) {
    const auto a = SymMatrix::from_rows({{1, -1}, {-1, 1}});
    const auto i = SymMatrix::identity(2);
    EXPECT_TRUE(matrix_leq(a, i));
    EXPECT_TRUE(matrix_leq(a, a));
    EXPECT_FALSE(matrix_leq(i, a));
    EXPECT_THROW(matrix_leq(a, SymMatrix::identity(3)), ValidationError);
}

// Entrywise order on cosine-type matrices is monotone in the smallest eigenvalue.
TEST(MatrixLeq, MonotoneSmallestEigenvalue) {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const CosineMatrix a2 = random_cosine(rng, 2 + trial % 6);
        SymMatrix a1 = a2.matrix();
        for (std::size_t i = 0; i < a1.dim(); ++i)
            for (std::size_t j = i + 1; j < a1.dim(); ++j) a1.set(i, j, std::max(-1.0, a1(i, j) - u(rng)));
        ASSERT_TRUE(matrix_leq(a1, a2.matrix()));
        EXPECT_LE(min_eigenvalue(a1), min_eigenvalue(a2.matrix()) + 1e-12);
    }
}

TEST(Orthonormalize, Examples) {
    auto b = orthonormalize(std::vector<Vector>{{2, 0}, {0, 3}}, 2);
    EXPECT_EQ(b.rank, 2u);
    EXPECT_NEAR(std::abs(b.basis[0][0]) + std::abs(b.basis[1][0]), 1.0, 1e-14);

    EXPECT_EQ(orthonormalize(std::vector<Vector>{{1, 0}, {1, 1e-12}}, 2, 1e-8).rank, 1u);

    auto c = orthonormalize(std::vector<Vector>{{1, 1, 0}, {1, -1, 0}, {0, 0, 0}}, 3);
    EXPECT_EQ(c.rank, 2u);
    for (const auto& v : c.basis) EXPECT_NEAR(v[2], 0.0, 1e-15);

    EXPECT_EQ(orthonormalize(std::vector<Vector>{}, 3).rank, 0u);
    EXPECT_THROW(orthonormalize(std::vector<Vector>{}, 0), ValidationError);
    EXPECT_THROW(orthonormalize(std::vector<Vector>{{1, 2}}, 3), ValidationError);
}

TEST(Orthonormalize, RandomSpansAgreeWithEliminationRank) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 2 + trial % 7;
        const std::size_t k = 1 + trial % 5;
        const std::size_t true_rank = std::min(k, d);
        Dense gens;
        for (std::size_t i = 0; i < true_rank; ++i) gens.push_back(gaussian_vector(rng, d));
        // add dependent combinations
        std::normal_distribution<double> g;
        for (std::size_t extra = 0; extra < 2; ++extra) {
            Vector v(d, 0.0);
            for (const auto& w : gens) axpy(g(rng), w, v);
            gens.push_back(v);
        }
        const auto ob = orthonormalize(gens, d);
        EXPECT_EQ(ob.rank, rank_of(gens, d));
        for (std::size_t i = 0; i < ob.rank; ++i)
            for (std::size_t j = 0; j < ob.rank; ++j)
                EXPECT_NEAR(dot(ob.basis[i], ob.basis[j]), i == j ? 1.0 : 0.0, 1e-10);
        const auto sub = Subspace::from_orthonormal(ob.basis, d);
        for (const auto& v : gens) EXPECT_LE(distance_to(v, sub), 1e-8 * std::max(1.0, norm(v)));
    }
}

TEST(SingularValues, MatchesGramEigenvalues) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 3 + trial % 6, cols = 1 + trial % 4;
        Dense c;
        for (std::size_t j = 0; j < cols; ++j) c.push_back(gaussian_vector(rng, rows));
        SymMatrix gram(cols);
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t j = i; j < cols; ++j) gram.set(i, j, dot(c[i], c[j]));
        const auto ev = sym_eigs(gram).eigenvalues;
        const auto sv = singular_values(c, rows).values;
        ASSERT_EQ(sv.size(), cols);
        for (std::size_t k = 0; k < cols; ++k) EXPECT_NEAR(sv[k] * sv[k], ev[cols - 1 - k], 1e-9);
    }
}

TEST(DiagonalCongruence, MatchesDefinition) {
    const auto a = example_rank4_cosine();
    const Vector d{1, 2, 3, 4};
    const auto b = diagonal_congruence(a, d);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(b(i, j), d[i] * a(i, j) * d[j]);
}
