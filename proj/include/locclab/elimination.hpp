#pragma once

// Copy-by-copy elimination protocol for N orthogonal bipartite pure states.
//
// Each round consumes one copy: the first two survivors are put in canonical
// form, Alice measures in the rotated basis, Bob measures in the basis B_k
// attached to her outcome k, and every survivor whose amplitude for the
// observed (k, j) vanishes is discarded. At least one of the chosen pair is
// always discarded, so at most N - 1 copies are used.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locclab/hilbert.hpp"
#include "locclab/random.hpp"

namespace locc {

class EnsemblePure {
public:
    EnsemblePure(std::vector<PureState> states, std::vector<std::string> labels = {},
                 const Tolerances& tol = kDefaultTol);

    int size() const { return int(states_.size()); }
    const SpaceShape& shape() const { return states_.front().shape(); }
    const std::vector<PureState>& states() const { return states_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const PureState& state(int i) const { return states_[std::size_t(i)]; }
    const std::string& label(int i) const { return labels_[std::size_t(i)]; }

private:
    std::vector<PureState> states_;
    std::vector<std::string> labels_;
};

enum class BobSlot { Phi, PhiPerp, Eta };

struct RoundTranscript {
    int copy_index = 0;
    int pair_first = -1;   // ensemble indices of the canonical pair
    int pair_second = -1;
    int alice_outcome = -1;
    int bob_outcome = -1;  // column of B_k
    BobSlot bob_slot = BobSlot::Eta;
    std::vector<int> eliminated;  // ensemble indices, ascending
    std::vector<int> survivors;

    bool operator==(const RoundTranscript&) const = default;
};

struct ProtocolResult {
    int identified = -1;
    int copies_used = 0;
    std::vector<RoundTranscript> transcripts;
};

struct ProtocolOptions {
    double elimination_threshold = 1e-9;  // outcome probabilities below this are structural zeros
    double orth_tol = 1e-9;
};

// One measurement round on the survivors (ensemble indices, in input order).
RoundTranscript run_round(const EnsemblePure& ensemble, const std::vector<int>& survivors, int true_index,
                          int copy_index, Rng& rng, const ProtocolOptions& opts = {});

// Convenience form: the survivors are the whole ensemble and the true state is
// located by amplitude match.
RoundTranscript run_round(const EnsemblePure& survivors, const PureState& true_state, std::uint64_t seed,
                          const ProtocolOptions& opts = {});

ProtocolResult distinguish(const EnsemblePure& ensemble, int true_index, std::uint64_t seed,
                           const ProtocolOptions& opts = {});

struct TrialStats {
    int trials = 0;
    int correct = 0;
    int max_copies = 0;
    std::map<int, int> copies_histogram;
};

// Trial t draws its true index uniformly (or uses `fixed_true_index`) from the
// stream derive_seed(seed, t).
TrialStats run_trials(const EnsemblePure& ensemble, int trials, std::uint64_t seed,
                      std::optional<int> fixed_true_index = std::nullopt, const ProtocolOptions& opts = {});

std::map<int, int> copies_histogram(const EnsemblePure& ensemble, int trials, std::uint64_t seed,
                                    const ProtocolOptions& opts = {});

}  // namespace locc
