#include <gtest/gtest.h>

#include <cmath>

#include "locclab/canonical.hpp"
#include "locclab/error.hpp"
#include "locclab/random.hpp"
#include "oracles.hpp"

using namespace locc;

namespace {

const double kR2 = 1.0 / std::sqrt(2.0);

PureState phi_plus() {
    Vec v(4);
    v << kR2, 0, 0, kR2;
    return PureState({2, 2}, v);
}
PureState phi_minus() {
    Vec v(4);
    v << kR2, 0, 0, -kR2;
    return PureState({2, 2}, v);
}
PureState psi_plus() {
    Vec v(4);
    v << 0, kR2, kR2, 0;
    return PureState({2, 2}, v);
}
PureState psi_minus() {
    Vec v(4);
    v << 0, kR2, -kR2, 0;
    return PureState({2, 2}, v);
}

Vec reassemble(const Mat& alice_basis, const std::vector<Vec>& rows, int db) {
    const Eigen::Index da = alice_basis.rows();
    Vec out = Vec::Zero(da * db);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (Eigen::Index a = 0; a < da; ++a)
            out.segment(a * db, db) += alice_basis(a, Eigen::Index(i)) * rows[i];
    return out;
}

double max_pair_overlap(const CanonicalPair& p) {
    double m = 0.0;
    for (std::size_t i = 0; i < p.phis.size(); ++i) m = std::max(m, std::abs(p.phi_perps[i].dot(p.phis[i])));
    return m;
}

}  // namespace

TEST(CrossOperator, ProductPairGivesZero) {
    Mat n = cross_operator(PureState::basis({2, 2}, 0, 0), PureState::basis({2, 2}, 1, 1));
    EXPECT_LT(n.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CrossOperator, BellPairMatchesIndexSum) {
    Mat n = cross_operator(phi_plus(), phi_minus());
    Mat ref = oracle::partial_trace_b(phi_plus().amplitudes() * phi_minus().amplitudes().adjoint(), 2, 2);
    EXPECT_LT((n - ref).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(n(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(n(1, 1).real(), -0.5, 1e-15);
}

TEST(CrossOperator, NonOrthogonalThrows) {
    EXPECT_THROW(cross_operator(phi_plus(), phi_plus()), ValidationError);
}

TEST(ZeroDiagonal, DiagonalPlusMinusOne) {
    Mat n = Mat::Zero(2, 2);
    n(0, 0) = 1.0;
    n(1, 1) = -1.0;
    Mat u = zero_diagonal_rotation(n);
    Mat r = u * n * u.adjoint();
    EXPECT_LT(r.diagonal().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(unitarity_error(u), 1e-12);
    // basis vectors |i> = columns of U^dagger are equal-weight (Hadamard-type)
    Mat basis = u.adjoint();
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(basis(0, i)), kR2, 1e-9);
}

TEST(ZeroDiagonal, ZeroMatrixGivesIdentity) {
    Mat u = zero_diagonal_rotation(Mat::Zero(3, 3));
    EXPECT_LT((u - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ZeroDiagonal, RejectsNonTraceless) {
    EXPECT_THROW(zero_diagonal_rotation(Mat::Identity(2, 2)), ValidationError);
}

TEST(ZeroDiagonal, RandomTracelessMatrices) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 1 + int(rng() % 10);
        Mat n = oracle::random_traceless(d, rng);
        Mat u = zero_diagonal_rotation(n);
        Mat r = u * n * u.adjoint();  // checked by direct multiplication
        EXPECT_LT(r.diagonal().cwiseAbs().maxCoeff(), 1e-9) << "d=" << d;
        EXPECT_LT(unitarity_error(u), 1e-10);
    }
}

TEST(ZeroDiagonal, HandlesCollinearAndDegenerateDiagonals) {
    // all diagonal entries real: the ray search degenerates to a line
    Mat n = Mat::Zero(3, 3);
    n(0, 0) = 2.0;
    n(1, 1) = -1.0;
    n(2, 2) = -1.0;
    Mat u = zero_diagonal_rotation(n);
    EXPECT_LT((u * n * u.adjoint()).diagonal().cwiseAbs().maxCoeff(), 1e-9);

    // nilpotent Jordan block already has zero diagonal
    Mat j = Mat::Zero(3, 3);
    j(0, 1) = 1.0;
    j(1, 2) = 1.0;
    Mat uj = zero_diagonal_rotation(j);
    EXPECT_LT((uj * j * uj.adjoint()).diagonal().cwiseAbs().maxCoeff(), 1e-9);

    // purely imaginary, distinct magnitudes
    Mat k = Mat::Zero(4, 4);
    k(0, 0) = cplx(0, 3);
    k(1, 1) = cplx(0, -1);
    k(2, 2) = cplx(0, -0.5);
    k(3, 3) = cplx(0, -1.5);
    Mat uk = zero_diagonal_rotation(k);
    EXPECT_LT((uk * k * uk.adjoint()).diagonal().cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Walgate, ProductPair) {
    auto pair = walgate_decompose(PureState::basis({2, 2}, 0, 0), PureState::basis({2, 2}, 1, 1));
    EXPECT_LT((pair.alice_basis - Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(pair.phis[0].norm(), 1.0, 1e-15);
    EXPECT_NEAR(pair.phis[1].norm(), 0.0, 1e-15);
    EXPECT_NEAR(pair.phi_perps[0].norm(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pair.phi_perps[1][1]), 1.0, 1e-15);
}

TEST(Walgate, BellPairUsesPlusMinusBasis) {
    auto pair = walgate_decompose(phi_plus(), phi_minus());
    EXPECT_LT(max_pair_overlap(pair), 1e-12);
    for (int i = 0; i < 2; ++i) {
        EXPECT_NEAR(std::abs(pair.alice_basis(0, i)), kR2, 1e-9);
        EXPECT_GT(pair.phis[std::size_t(i)].norm(), 0.1);
        EXPECT_GT(pair.phi_perps[std::size_t(i)].norm(), 0.1);
    }
    EXPECT_LT((reassemble(pair.alice_basis, pair.phis, 2) - phi_plus().amplitudes()).norm(), 1e-12);
    EXPECT_LT((reassemble(pair.alice_basis, pair.phi_perps, 2) - phi_minus().amplitudes()).norm(), 1e-12);
}

TEST(Walgate, NonOrthogonalThrows) {
    EXPECT_THROW(walgate_decompose(phi_plus(), phi_plus()), ValidationError);
}

TEST(Walgate, RandomPairsProperty) {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        auto st = random_orthogonal_states({3, 3}, 2, rng);
        auto pair = walgate_decompose(st[0], st[1]);
        EXPECT_LT(max_pair_overlap(pair), 1e-9);
        EXPECT_LT((reassemble(pair.alice_basis, pair.phis, 3) - st[0].amplitudes()).norm(), 1e-9);
        EXPECT_LT((reassemble(pair.alice_basis, pair.phi_perps, 3) - st[1].amplitudes()).norm(), 1e-9);
        EXPECT_LT(unitarity_error(pair.alice_basis), 1e-10);
        // sum of per-index overlaps is basis independent and equals <psi2|psi1>
        cplx total = 0.0;
        for (std::size_t i = 0; i < pair.phis.size(); ++i) total += pair.phi_perps[i].dot(pair.phis[i]);
        EXPECT_LT(std::abs(total - st[1].inner(st[0])), 1e-12);
    }
}

TEST(Residuals, NoOthersGivesEmpty) {
    auto pair = walgate_decompose(phi_plus(), phi_minus());
    EXPECT_TRUE(expand_residuals(pair, {}).empty());
}

TEST(Residuals, BellStatesReconstruct) {
    auto pair = walgate_decompose(phi_plus(), phi_minus());
    std::vector<PureState> others{psi_plus(), psi_minus()};
    auto ex = expand_residuals(pair, others);
    ASSERT_EQ(ex.size(), 2u);
    for (std::size_t n = 0; n < ex.size(); ++n) {
        auto chis = alice_residuals(pair, others[n]);
        for (int i = 0; i < 2; ++i) {
            EXPECT_LT((ex[n].reconstruct(i) - chis[std::size_t(i)]).norm(), 1e-10);
            EXPECT_LT(unitarity_error(ex[n].bob_bases[std::size_t(i)].basis), 1e-12);
        }
    }
}

TEST(Residuals, ZeroPhiCompletesBasis) {
    auto pair = walgate_decompose(PureState::basis({2, 2}, 0, 0), PureState::basis({2, 2}, 1, 1));
    auto ex = expand_residuals(pair, {PureState::basis({2, 2}, 0, 1)});
    ASSERT_EQ(ex.size(), 1u);
    const auto& e = ex[0];
    // i = 0: phi = |0>, phi_perp = 0; i = 1: phi = 0, phi_perp = |1>
    EXPECT_TRUE(e.bob_bases[0].has_phi);
    EXPECT_FALSE(e.bob_bases[0].has_perp);
    EXPECT_FALSE(e.bob_bases[1].has_phi);
    EXPECT_TRUE(e.bob_bases[1].has_perp);
    EXPECT_EQ(e.coefficients[0].b, cplx(0.0));
    EXPECT_EQ(e.coefficients[1].a, cplx(0.0));
    auto chis = alice_residuals(pair, PureState::basis({2, 2}, 0, 1));
    for (int i = 0; i < 2; ++i) EXPECT_LT((e.reconstruct(i) - chis[std::size_t(i)]).norm(), 1e-12);
    // |01>: residual at i = 0 is |1>, orthogonal to phi_0 = |0>, so it lives in the tail
    EXPECT_NEAR(std::abs(e.coefficients[0].a), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e.coefficients[0].tail.at(0)), 1.0, 1e-12);
}

TEST(Residuals, ShapeMismatchThrows) {
    auto pair = walgate_decompose(phi_plus(), phi_minus());
    EXPECT_THROW(expand_residuals(pair, {PureState::basis({3, 3}, 0, 0)}), ValidationError);
}
