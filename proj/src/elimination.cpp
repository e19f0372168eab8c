#include "locclab/elimination.hpp"

#include <algorithm>
#include <cmath>

#include "locclab/canonical.hpp"
#include "locclab/error.hpp"

namespace locc {

EnsemblePure::EnsemblePure(std::vector<PureState> states, std::vector<std::string> labels, const Tolerances& tol)
    : states_(std::move(states)), labels_(std::move(labels)) {
    if (states_.empty()) throw ValidationError("ensemble must contain at least one state");
    if (labels_.empty())
        for (std::size_t i = 0; i < states_.size(); ++i) labels_.push_back(std::to_string(i));
    if (labels_.size() != states_.size()) throw ValidationError("label count does not match state count");
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (!(states_[i].shape() == states_[0].shape())) throw ValidationError("ensemble states differ in shape");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(states_[j].inner(states_[i])) >= tol.orth)
                throw ValidationError("ensemble states " + labels_[j] + " and " + labels_[i] + " are not orthogonal");
    }
}

RoundTranscript run_round(const EnsemblePure& ensemble, const std::vector<int>& survivors, int true_index,
                          int copy_index, Rng& rng, const ProtocolOptions& opts) {
    if (survivors.size() < 2) throw ValidationError("a round needs at least two survivors");
    if (std::find(survivors.begin(), survivors.end(), true_index) == survivors.end())
        throw ValidationError("true state is not among the survivors");

    RoundTranscript tr;
    tr.copy_index = copy_index;
    tr.pair_first = survivors[0];
    tr.pair_second = survivors[1];

    const auto pair = walgate_decompose(ensemble.state(tr.pair_first), ensemble.state(tr.pair_second), opts.orth_tol);
    const auto bases = bob_bases(pair);
    const int da = ensemble.shape().dim_a;
    const int db = ensemble.shape().dim_b;

    // Joint outcome probabilities |<b_j|chi_k>|^2 for a given state.
    auto joint = [&](int state_index) {
        auto chis = alice_residuals(pair, ensemble.state(state_index));
        Eigen::MatrixXd w(da, db);
        for (int k = 0; k < da; ++k) {
            Vec coords = bases[std::size_t(k)].basis.adjoint() * chis[std::size_t(k)];
            w.row(k) = coords.cwiseAbs2().transpose();
        }
        return w;
    };

    const Eigen::MatrixXd truth = joint(true_index);
    auto thresholded = [&](double p) { return p >= opts.elimination_threshold ? p : 0.0; };

    std::vector<double> alice_w(std::size_t(da), 0.0);
    for (int k = 0; k < da; ++k)
        for (int j = 0; j < db; ++j) alice_w[std::size_t(k)] += thresholded(truth(k, j));
    tr.alice_outcome = sample_index(alice_w, rng);

    std::vector<double> bob_w(std::size_t(db), 0.0);
    for (int j = 0; j < db; ++j) bob_w[std::size_t(j)] = thresholded(truth(tr.alice_outcome, j));
    tr.bob_outcome = sample_index(bob_w, rng);

    const auto& bb = bases[std::size_t(tr.alice_outcome)];
    if (bb.has_phi && tr.bob_outcome == 0) tr.bob_slot = BobSlot::Phi;
    else if (bb.has_perp && tr.bob_outcome == int(bb.has_phi)) tr.bob_slot = BobSlot::PhiPerp;
    else tr.bob_slot = BobSlot::Eta;

    for (int s : survivors) {
        const double p = (s == true_index) ? truth(tr.alice_outcome, tr.bob_outcome)
                                           : joint(s)(tr.alice_outcome, tr.bob_outcome);
        if (p < opts.elimination_threshold) tr.eliminated.push_back(s);
        else tr.survivors.push_back(s);
    }
    std::sort(tr.eliminated.begin(), tr.eliminated.end());

    if (std::binary_search(tr.eliminated.begin(), tr.eliminated.end(), true_index))
        throw ConvergenceError("elimination round discarded the true state");
    if (tr.eliminated.empty()) throw ConvergenceError("elimination round discarded no state");
    return tr;
}

RoundTranscript run_round(const EnsemblePure& survivors, const PureState& true_state, std::uint64_t seed,
                          const ProtocolOptions& opts) {
    int true_index = -1;
    for (int i = 0; i < survivors.size(); ++i)
        if (std::abs(std::abs(survivors.state(i).inner(true_state)) - 1.0) < opts.orth_tol) true_index = i;
    if (true_index < 0) throw ValidationError("true state is not among the survivors");
    std::vector<int> all(std::size_t(survivors.size()));
    for (int i = 0; i < survivors.size(); ++i) all[std::size_t(i)] = i;
    Rng rng(seed);
    return run_round(survivors, all, true_index, 0, rng, opts);
}

ProtocolResult distinguish(const EnsemblePure& ensemble, int true_index, std::uint64_t seed,
                           const ProtocolOptions& opts) {
    if (true_index < 0 || true_index >= ensemble.size()) throw ValidationError("true index out of range");
    Rng rng(seed);
    std::vector<int> survivors(std::size_t(ensemble.size()));
    for (int i = 0; i < ensemble.size(); ++i) survivors[std::size_t(i)] = i;

    ProtocolResult result;
    while (survivors.size() > 1) {
        auto tr = run_round(ensemble, survivors, true_index, result.copies_used, rng, opts);
        survivors = tr.survivors;
        result.transcripts.push_back(std::move(tr));
        ++result.copies_used;
    }
    result.identified = survivors.front();
    return result;
}

TrialStats run_trials(const EnsemblePure& ensemble, int trials, std::uint64_t seed,
                      std::optional<int> fixed_true_index, const ProtocolOptions& opts) {
    if (trials < 1) throw ValidationError("trial count must be at least 1");
    TrialStats stats;
    for (int t = 0; t < trials; ++t) {
        std::uint64_t trial_seed = derive_seed(seed, std::uint64_t(t));
        int truth = fixed_true_index.value_or(-1);
        if (truth < 0) {
            Rng pick(trial_seed);
            truth = int(uniform01(pick) * ensemble.size());
        }
        auto res = distinguish(ensemble, truth, derive_seed(trial_seed, 0), opts);
        ++stats.trials;
        if (res.identified == truth) ++stats.correct;
        stats.max_copies = std::max(stats.max_copies, res.copies_used);
        ++stats.copies_histogram[res.copies_used];
    }
    return stats;
}

std::map<int, int> copies_histogram(const EnsemblePure& ensemble, int trials, std::uint64_t seed,
                                    const ProtocolOptions& opts) {
    return run_trials(ensemble, trials, seed, std::nullopt, opts).copies_histogram;
}

}  // namespace locc
