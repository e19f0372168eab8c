#include <gtest/gtest.h>

#include <cmath>

#include "locclab/error.hpp"
#include "locclab/upb.hpp"
#include "oracles.hpp"

using namespace locc;

namespace {

// Gram matrix by explicit factor inner products: <a_i|a_j><b_i|b_j>.
oracle::Mat factor_gram(const UpbCandidate& c) {
    const auto n = Eigen::Index(c.members.size());
    oracle::Mat g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& x = c.members[std::size_t(i)];
            const auto& y = c.members[std::size_t(j)];
            g(i, j) = x.a_part().dot(y.a_part()) * x.b_part().dot(y.b_part());
        }
    return g;
}

SeesawConfig cfg(int restarts = 200) {
    SeesawConfig c;
    c.restarts = restarts;
    c.seed = 1;
    return c;
}

UpbCandidate computational(int da, int db, int count) {
    std::vector<ProductState> m;
    for (int k = 0; k < count; ++k) {
        Vec a = Vec::Zero(da), b = Vec::Zero(db);
        a[k / db] = 1.0;
        b[k % db] = 1.0;
        m.emplace_back(a, b);
    }
    return UpbCandidate("computational", {da, db}, m);
}

}  // namespace

TEST(Tiles, GramIsIdentity) {
    auto t = catalog_tiles();
    ASSERT_EQ(t.members.size(), 5u);
    EXPECT_LT((factor_gram(t) - oracle::Mat::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(t.gram_error(), 1e-12);
}

TEST(Tiles, ComplementRankAndFactorNorms) {
    auto t = catalog_tiles();
    EXPECT_EQ(orthogonal_complement(t.span()).rank(), 4);
    for (const auto& m : t.members) {
        EXPECT_NEAR(m.a_part().norm(), 1.0, 1e-15);
        EXPECT_NEAR(m.b_part().norm(), 1.0, 1e-15);
    }
}

TEST(VerifyUpb, TilesIsVerified) {
    auto v = verify_upb(catalog_tiles(), cfg());
    EXPECT_EQ(v.status, UpbStatus::VerifiedUpb);
    EXPECT_EQ(v.complement_rank, 4);
    EXPECT_EQ(v.restarts_used, 200);
    EXPECT_EQ(v.restarts_converged, 200);
    EXPECT_LT(v.best_overlap, 1.0 - 1e-3);
    EXPECT_NEAR(v.best_overlap, oracle::kTilesComplementProductOverlap, 1e-6);
}

TEST(VerifyUpb, ExtendibleSetFindsMissingProduct) {
    auto v = verify_upb(computational(2, 2, 3), cfg(20));
    ASSERT_EQ(v.status, UpbStatus::ProductStateFound);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_NEAR(std::abs(v.witness->embed()[3]), 1.0, 1e-9);
}

TEST(VerifyUpb, NonOrthogonalAndComplete) {
    std::vector<ProductState> m{catalog_tiles().members[0], catalog_tiles().members[0]};
    EXPECT_EQ(verify_upb(UpbCandidate("dup", {3, 3}, m), cfg(5)).status, UpbStatus::NotOrthogonal);
    EXPECT_EQ(verify_upb(computational(2, 2, 4), cfg(5)).status, UpbStatus::CompleteBasis);
}

TEST(TensorUpb, TilesSquared) {
    auto t = catalog_tiles();
    auto t2 = tensor_upb(t, t);
    EXPECT_EQ(t2.members.size(), 25u);
    EXPECT_EQ(t2.shape, (SpaceShape{9, 9}));
    EXPECT_LT((factor_gram(t2) - oracle::Mat::Identity(25, 25)).cwiseAbs().maxCoeff(), 1e-12);
    // factor structure: member (i, j) has a-part a_i (x) a_j
    const auto& m = t2.members[1 * 5 + 3];
    Vec expect_a(9);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) expect_a[x * 3 + y] = t.members[1].a_part()[x] * t.members[3].a_part()[y];
    EXPECT_LT((m.a_part() - expect_a).norm(), 1e-15);
}

TEST(TensorUpb, WithFullProductBasisStaysOrthogonal) {
    auto t = tensor_upb(catalog_tiles(), computational(2, 2, 4));
    EXPECT_EQ(t.members.size(), 20u);
    EXPECT_LT(t.gram_error(), 1e-12);
}

TEST(TensorUpb, PowerTwoEqualsTensor) {
    auto t = catalog_tiles();
    auto p = upb_power(t, 2);
    auto q = tensor_upb(t, t);
    ASSERT_EQ(p.members.size(), q.members.size());
    for (std::size_t i = 0; i < p.members.size(); ++i)
        EXPECT_LT((p.members[i].embed() - q.members[i].embed()).norm(), 1e-15);
}

TEST(TensorUpb, SquaredTilesProductOverlapMatchesSingleCopy) {
    // the best product state of (S (x) S)^perp is the tensor of two single-copy optima
    auto v = verify_upb(upb_power(catalog_tiles(), 2), cfg(20));
    double l1 = oracle::kTilesComplementProductOverlap;
    EXPECT_EQ(v.status, UpbStatus::VerifiedUpb);
    EXPECT_NEAR(v.best_overlap, 1.0 - (1.0 - l1) * (1.0 - l1), 1e-9);
}

TEST(SigmaRho, SingleCopyMaximallyMixed) {
    auto e = make_sigma_rho(catalog_tiles(), {}, 1);
    EXPECT_EQ(e.sigma.rank(), 5);
    EXPECT_NEAR(e.sigma.matrix().trace().real(), 1.0, 1e-12);
    Mat pc = projector(orthogonal_complement(catalog_tiles().span()));
    EXPECT_LT((e.rho.matrix() - pc / 4.0).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(std::abs((e.sigma.matrix() * e.rho.matrix()).trace()), 1e-12);
}

TEST(SigmaRho, PureTwoCopies) {
    RhoSpec spec{RhoKind::PureInComplement, 1, 3};
    auto e = make_sigma_rho(catalog_tiles(), spec, 2);
    EXPECT_EQ(e.sigma.matrix().rows(), 81);
    EXPECT_EQ(e.rho.matrix().rows(), 81);
    EXPECT_EQ(e.rho.rank(), 1);
    EXPECT_LT(std::abs((e.sigma.matrix() * e.rho.matrix()).trace()), 1e-10);
}

TEST(SigmaRho, RandomRankTwoSeedSeven) {
    RhoSpec spec{RhoKind::RandomRank, 2, 7};
    auto e = make_sigma_rho(catalog_tiles(), spec, 1);
    Eigen::SelfAdjointEigenSolver<Mat> es(e.rho.matrix());
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
    EXPECT_NEAR(e.rho.matrix().trace().real(), 1.0, 1e-12);
    int positive = 0;
    for (auto x : es.eigenvalues()) positive += x > 1e-9;
    EXPECT_EQ(positive, 2);
    Mat ps = projector(catalog_tiles().span());
    EXPECT_LT((ps * e.rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    // same seed, same operator
    EXPECT_EQ(make_sigma_rho(catalog_tiles(), spec, 1).rho.matrix(), e.rho.matrix());
}

TEST(SigmaRho, Errors) {
    EXPECT_THROW(make_sigma_rho(catalog_tiles(), {RhoKind::RandomRank, 5, 0}, 1), ValidationError);
    EXPECT_THROW(make_sigma_rho(catalog_tiles(), {}, 3), ValidationError);
    EXPECT_THROW(make_sigma_rho(catalog_tiles(), {}, 4, true), ValidationError);
    EXPECT_THROW(make_sigma_rho(computational(2, 2, 4), {}, 1), ValidationError);
    EXPECT_THROW(parse_rho_kind("thermal"), ValidationError);
    EXPECT_NO_THROW(check_copy_cap(3, true));
}

TEST(SigmaRho, PowerIsProjectorOntoTensorSubspace) {
    auto t = catalog_tiles();
    auto e = make_sigma_rho(t, {}, 2);
    Subspace s2 = upb_power(t, 2).span();
    ASSERT_EQ(s2.rank(), 25);
    Mat p = projector(s2);
    EXPECT_LT((e.sigma.matrix() - p / 25.0).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT(std::abs((p * e.rho.matrix()).trace()), 1e-9);
}

TEST(SigmaRho, NCopyWitnessRespectsCap) {
    auto e = make_sigma_rho(catalog_tiles(), {}, 1);
    EXPECT_NO_THROW(conclusive_witness_ncopies(e, 0, cfg(5)));
    e.copies = 3;
    EXPECT_THROW(conclusive_witness_ncopies(e, 0, cfg(5)), ValidationError);
}
