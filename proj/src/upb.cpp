#include "locclab/upb.hpp"

#include <cmath>

#include "locclab/error.hpp"
#include "locclab/random.hpp"

namespace locc {

UpbCandidate::UpbCandidate(std::string n, SpaceShape s, std::vector<ProductState> m)
    : name(std::move(n)), shape(s), members(std::move(m)) {
    if (members.empty()) throw ValidationError("UPB candidate has no members");
    for (const auto& p : members)
        if (!(p.shape() == shape)) throw ValidationError("UPB member shape does not match candidate shape");
}

Mat UpbCandidate::member_matrix() const {
    Mat m(shape.total(), Eigen::Index(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) m.col(Eigen::Index(k)) = members[k].embed();
    return m;
}

Mat UpbCandidate::gram() const {
    Mat m = member_matrix();
    return m.adjoint() * m;
}

double UpbCandidate::gram_error() const {
    Mat g = gram();
    return (g - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

Subspace UpbCandidate::span() const {
    // Members are orthonormal; re-orthonormalize to absorb rounding.
    std::vector<Vec> cols;
    for (const auto& p : members) cols.push_back(p.embed());
    return Subspace::span(shape, cols);
}

UpbCandidate catalog_tiles() {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    auto v = [](std::initializer_list<double> xs) {
        Vec out(Eigen::Index(xs.size()));
        Eigen::Index i = 0;
        for (double x : xs) out[i++] = x;
        return out;
    };
    std::vector<ProductState> m;
    m.emplace_back(v({1, 0, 0}), v({r2, -r2, 0}));
    m.emplace_back(v({0, 0, 1}), v({0, r2, -r2}));
    m.emplace_back(v({r2, -r2, 0}), v({0, 0, 1}));
    m.emplace_back(v({0, r2, -r2}), v({1, 0, 0}));
    m.emplace_back(v({r3, r3, r3}), v({r3, r3, r3}));
    return UpbCandidate("tiles", {3, 3}, std::move(m));
}

std::string to_string(UpbStatus s) {
    switch (s) {
        case UpbStatus::VerifiedUpb: return "verified-UPB";
        case UpbStatus::NotOrthogonal: return "not-orthogonal";
        case UpbStatus::ProductStateFound: return "product-state-found";
        case UpbStatus::CompleteBasis: return "complete-basis";
    }
    return "not-orthogonal";
}

UpbVerdict verify_upb(const UpbCandidate& c, const SeesawConfig& cfg, double gram_tol) {
    UpbVerdict v;
    v.seed = cfg.seed;
    v.gram_error = c.gram_error();
    if (v.gram_error >= gram_tol) {
        v.status = UpbStatus::NotOrthogonal;
        return v;
    }
    Subspace s = c.span();
    v.complement_rank = c.shape.total() - s.rank();
    if (v.complement_rank == 0) {
        v.status = UpbStatus::CompleteBasis;
        return v;
    }
    Subspace comp = orthogonal_complement(s);
    OverlapResult ov = max_product_overlap(projector(comp), c.shape, cfg, c.members);
    v.best_overlap = ov.value;
    v.restarts_used = int(ov.runs.size());
    v.restarts_converged = ov.converged_count();
    v.min_restart_overlap = ov.runs.front().value;
    for (const auto& r : ov.runs) v.min_restart_overlap = std::min(v.min_restart_overlap, r.value);
    if (ov.value >= 1.0 - cfg.success_gap) {
        v.status = UpbStatus::ProductStateFound;
        v.witness = ov.maximizer;
    } else {
        v.status = UpbStatus::VerifiedUpb;
    }
    return v;
}

UpbCandidate tensor_upb(const UpbCandidate& c1, const UpbCandidate& c2, double gram_tol) {
    if (c1.gram_error() >= gram_tol || c2.gram_error() >= gram_tol)
        throw ValidationError("tensor_upb needs orthogonal candidates");
    std::vector<ProductState> m;
    m.reserve(c1.members.size() * c2.members.size());
    for (const auto& x : c1.members)
        for (const auto& y : c2.members) m.push_back(tensor(x, y));
    return UpbCandidate(c1.name + "*" + c2.name, tensor_shape(c1.shape, c2.shape), std::move(m));
}

UpbCandidate upb_power(const UpbCandidate& c, int copies) {
    if (copies < 1) throw ValidationError("copy count must be at least 1");
    UpbCandidate out = c;
    for (int k = 1; k < copies; ++k) out = tensor_upb(out, c);
    if (copies > 1) out.name = c.name + "^" + std::to_string(copies);
    return out;
}

std::string to_string(RhoKind k) {
    switch (k) {
        case RhoKind::MaximallyMixedComplement: return "maximally-mixed-complement";
        case RhoKind::RandomRank: return "random-rank-k";
        case RhoKind::PureInComplement: return "pure-in-complement";
    }
    return "maximally-mixed-complement";
}

RhoKind parse_rho_kind(const std::string& s) {
    if (s == "maximally-mixed-complement") return RhoKind::MaximallyMixedComplement;
    if (s == "random-rank-k" || s == "random-rank") return RhoKind::RandomRank;
    if (s == "pure-in-complement") return RhoKind::PureInComplement;
    throw ValidationError("unknown rho kind: " + s);
}

void check_copy_cap(int copies, bool allow_large) {
    if (copies < 1) throw ValidationError("copy count must be at least 1");
    const int cap = allow_large ? kLargeCopyCap : kDefaultCopyCap;
    if (copies > cap)
        throw ValidationError("copy count " + std::to_string(copies) + " exceeds cap " + std::to_string(cap) +
                              (allow_large ? "" : " (pass the large-copies override to allow 3)"));
}

std::vector<ProductState> SigmaRhoEnsemble::seed_states() const { return upb_power(base, copies).members; }

SigmaRhoEnsemble make_sigma_rho(const UpbCandidate& c, const RhoSpec& spec, int copies, bool allow_large) {
    check_copy_cap(copies, allow_large);
    if (c.gram_error() >= 1e-12) throw ValidationError("sigma/rho construction needs an orthogonal candidate");
    Subspace s = c.span();
    Subspace comp = orthogonal_complement(s);
    const int m = comp.rank();
    if (m == 0) throw ValidationError("candidate spans the whole space; complement is empty");

    Mat rho1;
    switch (spec.kind) {
        case RhoKind::MaximallyMixedComplement:
            rho1 = projector(comp) / double(m);
            break;
        case RhoKind::RandomRank:
        case RhoKind::PureInComplement: {
            const int k = spec.kind == RhoKind::PureInComplement ? 1 : spec.rank;
            if (k < 1) throw ValidationError("rho rank must be at least 1");
            if (k > m)
                throw ValidationError("rho rank " + std::to_string(k) + " exceeds complement dimension " +
                                      std::to_string(m));
            Rng rng(spec.seed);
            Mat g(m, k);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < k; ++j) g(i, j) = gaussian_complex(rng);
            Mat w = comp.basis() * g;
            rho1 = w * w.adjoint();
            rho1 /= rho1.trace().real();
            break;
        }
    }
    rho1 = (rho1 + rho1.adjoint()) * 0.5;

    DensityOperator sigma1 = normalized_projector(s);
    DensityOperator rho_one(c.shape, rho1);
    return SigmaRhoEnsemble{c, spec, copies, tensor_power(sigma1, copies), tensor_power(rho_one, copies)};
}

WitnessReport conclusive_witness_ncopies(const SigmaRhoEnsemble& ens, int target, const SeesawConfig& cfg,
                                         bool allow_large) {
    check_copy_cap(ens.copies, allow_large);
    return conclusive_witness(ens.members(), target, cfg, ens.seed_states());
}

}  // namespace locc
