#pragma once

// Canonical form of two orthogonal bipartite pure states:
//
//   |psi1> = sum_i |i>_A (x) |phi_i>,   |psi2> = sum_i |i>_A (x) |phi_perp_i>,
//   <phi_perp_i|phi_i> = 0 for every i,
//
// built constructively from N = Tr_B |psi1><psi2|. Tr N = <psi2|psi1> = 0, and
// a traceless matrix is unitarily similar to one with zero diagonal; the
// diagonal of N in Alice's basis {|i>} is exactly <phi_perp_i|phi_i>.

#include <vector>

#include "locclab/hilbert.hpp"

namespace locc {

struct CanonicalPair {
    SpaceShape shape;
    Mat alice_basis;              // d_A x d_A unitary, column i is |i>_A
    std::vector<Vec> phis;        // (<i| (x) I)|psi1>, unnormalized
    std::vector<Vec> phi_perps;   // (<i| (x) I)|psi2>, unnormalized
};

// Bob-side measurement basis for one Alice outcome i and the expansion of
// every remaining state's residual |chi_i^n> in it.
//
// Columns of bob_basis are ordered: the phi_i direction (if phi_i != 0), the
// phi_perp_i direction (if phi_perp_i != 0), then the eta completion.
struct BobBasis {
    Mat basis;
    bool has_phi = false;
    bool has_perp = false;

    int tail_offset() const { return int(has_phi) + int(has_perp); }
};

struct ResidualCoefficients {
    cplx a{0.0};               // along phi_i direction; 0 when phi_i = 0
    cplx b{0.0};               // along phi_perp_i direction; 0 when phi_perp_i = 0
    std::vector<cplx> tail;    // along the eta_p completion vectors
};

struct ResidualExpansion {
    std::vector<BobBasis> bob_bases;                 // one per Alice outcome i
    std::vector<ResidualCoefficients> coefficients;  // one per Alice outcome i

    // Reassembles |chi_i> from the coefficients.
    Vec reconstruct(int i) const;
};

struct ZeroDiagonalOptions {
    double tol = 1e-9;
    int max_sweeps = 100;
};

Mat cross_operator(const PureState& psi1, const PureState& psi2, double orth_tol = 1e-9);

// Returns U with diag(U n U^dagger) = 0.
Mat zero_diagonal_rotation(const Mat& n, const ZeroDiagonalOptions& opts = {});

CanonicalPair walgate_decompose(const PureState& psi1, const PureState& psi2, double orth_tol = 1e-9);

// Residual |chi_i> = (<i| (x) I)|psi> in the pair's Alice basis.
std::vector<Vec> alice_residuals(const CanonicalPair& pair, const PureState& psi);

// Bob bases derived from the pair alone (independent of the other states).
std::vector<BobBasis> bob_bases(const CanonicalPair& pair, double zero_tol = 1e-12);

std::vector<ResidualExpansion> expand_residuals(const CanonicalPair& pair, const std::vector<PureState>& others);

}  // namespace locc
