#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "locclab/error.hpp"
#include "locclab/random.hpp"
#include "locclab/reports.hpp"

using namespace locc;

namespace {

json amp(double re, double im = 0.0) { return json::array({re, im}); }

json bell4_json() {
    const double r = 1.0 / std::sqrt(2.0);
    auto st = [&](std::string label, double a, double b, double c, double d) {
        return json{{"label", label}, {"dim_a", 2}, {"dim_b", 2}, {"amplitudes", {amp(a), amp(b), amp(c), amp(d)}}};
    };
    return {{"id", "bell4"},
            {"states",
             {st("phi+", r, 0, 0, r), st("phi-", r, 0, 0, -r), st("psi+", 0, r, r, 0), st("psi-", 0, r, -r, 0)}}};
}

RunConfig quiet(int restarts = 200) {
    RunConfig c;
    c.trials = 200;
    c.timestamp = false;
    c.seesaw.restarts = restarts;
    return c;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST(EnsembleFile, ParsesPureStates) {
    auto e = ensemble_from_json(bell4_json());
    EXPECT_EQ(e.id, "bell4");
    EXPECT_EQ(e.members.size(), 4u);
    EXPECT_TRUE(e.all_pure());
    EXPECT_EQ(e.labels[2], "psi+");
    EXPECT_EQ(e.as_pure().size(), 4);
}

TEST(EnsembleFile, RoundTrips) {
    auto e = ensemble_from_json(bell4_json());
    auto back = ensemble_from_json(to_json(e));
    ASSERT_EQ(back.members.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_LT((back.members[i].matrix() - e.members[i].matrix()).cwiseAbs().maxCoeff(), 1e-15);

    auto sr = ensemble_from_sigma_rho(make_sigma_rho(catalog_tiles(), {}, 1), "tiles-sr");
    auto sr2 = ensemble_from_json(to_json(sr));
    ASSERT_TRUE(sr2.upb_source.has_value());
    EXPECT_EQ(sr2.upb_source->upb.members.size(), 5u);
    EXPECT_FALSE(sr2.all_pure());
}

TEST(EnsembleFile, RejectsMalformed) {
    EXPECT_THROW(ensemble_from_json(json::object()), ValidationError);
    EXPECT_THROW(ensemble_from_json(json{{"states", json::array()}}), ValidationError);
    json unnormalized = {{"states", {{{"dim_a", 1}, {"dim_b", 2}, {"amplitudes", {amp(1), amp(1)}}}}}};
    EXPECT_THROW(ensemble_from_json(unnormalized), ValidationError);
    json wrong_len = {{"states", {{{"dim_a", 2}, {"dim_b", 2}, {"amplitudes", {amp(1)}}}}}};
    EXPECT_THROW(ensemble_from_json(wrong_len), ValidationError);
    json shapes = {{"states",
                    {{{"dim_a", 1}, {"dim_b", 2}, {"amplitudes", {amp(1), amp(0)}}},
                     {{"dim_a", 2}, {"dim_b", 1}, {"amplitudes", {amp(0), amp(1)}}}}}};
    EXPECT_THROW(ensemble_from_json(shapes), ValidationError);
}

TEST(Distinguish, BellReport) {
    auto rep = run_distinguish(ensemble_from_json(bell4_json()), std::nullopt, quiet());
    EXPECT_EQ(rep.stats.correct, rep.stats.trials);
    EXPECT_LE(rep.stats.max_copies, 3);
    ASSERT_TRUE(rep.example.has_value());
    EXPECT_LE(rep.example->copies_used, 3);
}

TEST(Distinguish, NonOrthogonalOrMixedRejected) {
    json nonorth = {{"states",
                     {{{"dim_a", 1}, {"dim_b", 2}, {"amplitudes", {amp(1), amp(0)}}},
                      {{"dim_a", 1}, {"dim_b", 2}, {"amplitudes", {amp(0.6), amp(0.8)}}}}}};
    EXPECT_THROW(run_distinguish(ensemble_from_json(nonorth), std::nullopt, quiet()), ValidationError);
    auto sr = ensemble_from_sigma_rho(make_sigma_rho(catalog_tiles(), {}, 1), "sr");
    EXPECT_THROW(run_distinguish(sr, std::nullopt, quiet()), ValidationError);
}

TEST(Distinguish, TwoStateHistogram) {
    json two = {{"id", "two"},
                {"states",
                 {{{"dim_a", 2}, {"dim_b", 2}, {"amplitudes", {amp(1), amp(0), amp(0), amp(0)}}},
                  {{"dim_a", 2}, {"dim_b", 2}, {"amplitudes", {amp(0), amp(0), amp(0), amp(1)}}}}}};
    RunConfig c = quiet();
    c.trials = 1000;
    auto rep = run_distinguish(ensemble_from_json(two), std::nullopt, c);
    EXPECT_EQ(rep.stats.copies_histogram, (std::map<int, int>{{1, 1000}}));
}

TEST(Classify, BellIsClassA) {
    auto res = classify(ensemble_from_json(bell4_json()), quiet());
    EXPECT_EQ(res.class_label, EnsembleClass::A);
    EXPECT_FALSE(res.upb_certified);
}

TEST(Classify, ProductProjectorsAreClassA) {
    json e = {{"states",
               {{{"dim_a", 2}, {"dim_b", 2}, {"matrix", {amp(1), amp(0), amp(0), amp(0), amp(0), amp(0), amp(0),
                                                       amp(0), amp(0), amp(0), amp(0), amp(0), amp(0), amp(0),
                                                       amp(0), amp(0)}}},
                {{"dim_a", 2}, {"dim_b", 2}, {"matrix", {amp(0), amp(0), amp(0), amp(0), amp(0), amp(0), amp(0),
                                                       amp(0), amp(0), amp(0), amp(0), amp(0), amp(0), amp(0),
                                                       amp(0), amp(1)}}}}}};
    auto f = ensemble_from_json(e);
    EXPECT_TRUE(f.all_pure());  // rank-one operators are recognized as pure
    EXPECT_EQ(classify(f, quiet()).class_label, EnsembleClass::A);
}

TEST(Classify, TilesSigmaRhoIsCertifiedCCandidate) {
    auto f = ensemble_from_sigma_rho(make_sigma_rho(catalog_tiles(), {}, 1), "tiles-sr");
    auto res = classify(f, quiet());
    EXPECT_EQ(res.class_label, EnsembleClass::CCandidate);
    EXPECT_TRUE(res.upb_certified);
    EXPECT_EQ(res.n_copies_tested, (std::vector<int>{1, 2}));
    for (const auto& w : res.witnesses) {
        if (w.report.target_index == 0) EXPECT_EQ(w.report.verdict, WitnessVerdict::WitnessFound);
        if (w.report.target_index == 1) EXPECT_EQ(w.report.verdict, WitnessVerdict::NoWitnessHeuristic);
    }
}

TEST(Classify, TamperedUpbSourceNotCertified) {
    auto f = ensemble_from_sigma_rho(make_sigma_rho(catalog_tiles(), {}, 1), "tiles-sr");
    f.upb_source->sigma_index = 1;  // claims rho is the UPB projector
    RunConfig c = quiet(20);
    c.max_copies = 1;
    EXPECT_FALSE(classify(f, c).upb_certified);
}

TEST(Classify, RandomPureNeverCCandidate) {
    Rng rng(2);
    for (int k = 0; k < 10; ++k) {
        int n = 2 + int(rng() % 4);
        EnsemblePure ens(random_orthogonal_states({3, 3}, n, rng));
        json states = json::array();
        for (const auto& s : ens.states()) states.push_back(to_json(s));
        auto res = classify(ensemble_from_json(json{{"states", states}}), quiet());
        EXPECT_EQ(res.class_label, EnsembleClass::A);
    }
}

TEST(Reports, CsvColumns) {
    auto f = ensemble_from_sigma_rho(make_sigma_rho(catalog_tiles(), {}, 1), "tiles-sr");
    RunConfig c = quiet(20);
    c.max_copies = 1;
    auto ls = lines(report_csv(classify(f, c)));
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(ls[0], "ensemble_id,n,target,verdict,best_overlap,seed");
    EXPECT_EQ(ls[1].rfind("tiles-sr,1,0,witness-found,", 0), 0u);
    EXPECT_EQ(ls[2].rfind("tiles-sr,1,1,no-witness-heuristic,", 0), 0u);

    auto d = lines(report_csv(run_distinguish(ensemble_from_json(bell4_json()), std::nullopt, quiet())));
    EXPECT_EQ(d[0], "ensemble_id,copies_used,frequency,seed");
}

TEST(Reports, DeterministicWithoutTimestamp) {
    auto e = ensemble_from_json(bell4_json());
    RunConfig c = quiet();
    EXPECT_EQ(report_json(run_distinguish(e, std::nullopt, c), c).dump(),
              report_json(run_distinguish(e, std::nullopt, c), c).dump());
    EXPECT_FALSE(report_json(run_distinguish(e, std::nullopt, c), c).contains("generated_at"));
    c.timestamp = true;
    EXPECT_TRUE(report_json(run_distinguish(e, std::nullopt, c), c).contains("generated_at"));

    auto f = ensemble_from_sigma_rho(make_sigma_rho(catalog_tiles(), {}, 1), "tiles-sr");
    RunConfig k = quiet(20);
    k.max_copies = 1;
    EXPECT_EQ(report_json(classify(f, k), k).dump(), report_json(classify(f, k), k).dump());
}

TEST(Reports, ConfigValidation) {
    RunConfig c;
    c.trials = 0;
    EXPECT_THROW(validate(c), ValidationError);
    c = RunConfig{};
    c.max_copies = 3;
    EXPECT_THROW(classify(ensemble_from_sigma_rho(make_sigma_rho(catalog_tiles(), {}, 1), "x"), c), ValidationError);
}
