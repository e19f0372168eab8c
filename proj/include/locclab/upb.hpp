#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locclab/hilbert.hpp"
#include "locclab/witness.hpp"

namespace locc {

struct UpbCandidate {
    std::string name;
    SpaceShape shape;
    std::vector<ProductState> members;

    UpbCandidate(std::string name, SpaceShape shape, std::vector<ProductState> members);

    Mat member_matrix() const;  // columns are the embedded members
    Mat gram() const;
    double gram_error() const;  // max |G - I|
    Subspace span() const;
};

// The five-state "Tiles" UPB on 3 (x) 3.
UpbCandidate catalog_tiles();

enum class UpbStatus { VerifiedUpb, NotOrthogonal, ProductStateFound, CompleteBasis };

std::string to_string(UpbStatus s);

struct UpbVerdict {
    UpbStatus status = UpbStatus::NotOrthogonal;
    double gram_error = 0.0;
    int complement_rank = 0;
    std::optional<ProductState> witness;   // set for ProductStateFound
    double best_overlap = 0.0;
    double min_restart_overlap = 0.0;
    int restarts_used = 0;
    int restarts_converged = 0;
    std::uint64_t seed = 0;
};

// Orthogonality is checked against `gram_tol`; unextendibility by see-saw
// over the complement projector. VerifiedUpb is a heuristic certificate.
UpbVerdict verify_upb(const UpbCandidate& c, const SeesawConfig& cfg, double gram_tol = 1e-12);

UpbCandidate tensor_upb(const UpbCandidate& c1, const UpbCandidate& c2, double gram_tol = 1e-12);
UpbCandidate upb_power(const UpbCandidate& c, int copies);

enum class RhoKind { MaximallyMixedComplement, RandomRank, PureInComplement };

struct RhoSpec {
    RhoKind kind = RhoKind::MaximallyMixedComplement;
    int rank = 1;            // RandomRank only
    std::uint64_t seed = 0;  // RandomRank / PureInComplement
};

std::string to_string(RhoKind k);
RhoKind parse_rho_kind(const std::string& s);

inline constexpr int kDefaultCopyCap = 2;
inline constexpr int kLargeCopyCap = 3;

// Throws ValidationError when copies exceeds the cap in force.
void check_copy_cap(int copies, bool allow_large);

struct SigmaRhoEnsemble {
    UpbCandidate base;           // single-copy UPB
    RhoSpec rho_spec;
    int copies = 1;
    DensityOperator sigma;       // normalized projector onto span(base)^(x)n
    DensityOperator rho;         // (rho_1)^(x)n with rho_1 supported in the complement

    std::vector<DensityOperator> members() const { return {sigma, rho}; }
    // Tensor powers of the UPB members; good see-saw starting points.
    std::vector<ProductState> seed_states() const;
};

// Requires an orthogonal, incomplete candidate; unextendibility is the
// caller's responsibility (see verify_upb).
SigmaRhoEnsemble make_sigma_rho(const UpbCandidate& c, const RhoSpec& spec, int copies, bool allow_large = false);

WitnessReport conclusive_witness_ncopies(const SigmaRhoEnsemble& ens, int target, const SeesawConfig& cfg,
                                         bool allow_large = false);

}  // namespace locc
