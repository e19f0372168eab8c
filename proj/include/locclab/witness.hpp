#pragma once

// Product-state witness search.
//
// The core routine maximizes <a (x) b|P|a (x) b> over product states by
// see-saw: with b fixed the optimum over a is the top eigenvector of the
// contracted d_A x d_A operator, and symmetrically for b. Each half-step is
// an exact maximization, so the objective never decreases within a restart.
// A value below 1 on every restart is numerical evidence (not a proof) that
// the range of P contains no product state.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locclab/hilbert.hpp"

namespace locc {

struct SeesawConfig {
    int restarts = 200;
    int max_iters = 5000;
    double conv_tol = 1e-12;        // stop when one full iteration gains less than this
    // overlap >= 1 - success_gap counts as "in the subspace"; must sit below
    // the UPB gap, which shrinks like (1 - lambda_1)^n for n-fold powers
    double success_gap = 1e-6;
    double positive_tol = 1e-6;     // <phi|rho_i|phi> above this counts as nonzero
    double witness_zero_tol = 1e-8; // <phi|rho_j|phi> below this counts as zero
    double kernel_cutoff = 1e-9;
    std::uint64_t seed = 0;
};

void validate(const SeesawConfig& cfg);

struct SeesawRun {
    double value = 0.0;
    Vec a;
    Vec b;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;  // objective after every half-step
};

// One restart from the given Bob-side starting vector.
SeesawRun seesaw_from(const Mat& p, const SpaceShape& shape, const Vec& b_start, const SeesawConfig& cfg);

struct OverlapResult {
    double value = 0.0;                // best over restarts
    int best_restart = -1;
    std::optional<ProductState> maximizer;
    std::vector<SeesawRun> runs;       // one per restart

    int converged_count() const;
};

// Restart r starts from a random b drawn from derive_seed(cfg.seed, r).
// Restart 0 also tries the b-part of every state in `seed_states` and keeps
// the best of those starts.
OverlapResult max_product_overlap(const Mat& p, const SpaceShape& shape, const SeesawConfig& cfg,
                                  const std::vector<ProductState>& seed_states = {});

enum class WitnessVerdict { WitnessFound, NoWitnessHeuristic, Undecided };

std::string to_string(WitnessVerdict v);

struct WitnessReport {
    int target_index = -1;
    WitnessVerdict verdict = WitnessVerdict::Undecided;
    std::optional<ProductState> witness;
    double best_overlap = 0.0;
    int restarts_used = 0;
    int restarts_converged = 0;
    double min_restart_overlap = 0.0;
    int kernel_rank = 0;
    std::uint64_t seed = 0;
};

// Necessary condition for conclusive local identification of ensemble[target]:
// a product state orthogonal to every other member's support with nonzero
// weight on the target. Of the valid candidates found, the one with the
// largest target weight is returned.
WitnessReport conclusive_witness(const std::vector<DensityOperator>& ensemble, int target, const SeesawConfig& cfg,
                                 const std::vector<ProductState>& seed_states = {});

// True iff Tr(P_i rho_j) < tol for all i != j, with P_i the range projector
// of rho_i. Says nothing about whether a separable POVM exists.
bool support_orthogonality(const std::vector<DensityOperator>& ensemble, double tol = 1e-9,
                           double range_cutoff = 1e-9);

// Checks pairwise Tr(rho_i rho_j) < tol; throws ValidationError otherwise.
void require_orthogonal(const std::vector<DensityOperator>& ensemble, double tol = 1e-9);

}  // namespace locc
