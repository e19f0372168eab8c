#include "locclab/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "locclab/error.hpp"

namespace locc {

Mat cross_operator(const PureState& psi1, const PureState& psi2, double orth_tol) {
    if (!(psi1.shape() == psi2.shape())) throw ValidationError("cross operator: shape mismatch");
    if (std::abs(psi2.inner(psi1)) >= orth_tol) throw ValidationError("cross operator: states are not orthogonal");
    // N = Tr_B |psi1><psi2| = C1 C2^dagger with C the coefficient matrices.
    return psi1.coefficient_matrix() * psi2.coefficient_matrix().adjoint();
}

// ---------------------------------------------------------------------------
// Zero-diagonal rotation.
//
// Works on M = U n U^dagger in place. A plane rotation in (p, q) can move the
// diagonal entry M_pp to any point of the segment [M_pp, M_qq] (the numerical
// range of the 2x2 compression is convex and contains both endpoints), with
// M_qq absorbing the difference. Position p is zeroed by first pulling some
// later diagonal entry onto the ray opposite M_pp, then rotating (p, q) so
// that M_pp lands on 0. Since the trailing block stays traceless, 0 always
// lies in the convex hull of the remaining diagonal.

namespace {

class DiagonalZeroer {
public:
    explicit DiagonalZeroer(const Mat& n) : m_(n), u_(Mat::Identity(n.rows(), n.cols())) {}

    const Mat& unitary() const { return u_; }
    const Mat& matrix() const { return m_; }

    double max_diag() const { return m_.diagonal().cwiseAbs().maxCoeff(); }

    void sweep() {
        const Eigen::Index d = m_.rows();
        const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
        for (Eigen::Index p = 0; p + 1 < d; ++p) {
            cplx dp = m_(p, p);
            if (std::abs(dp) < 1e-15 * scale) continue;
            cplx ray = -dp / std::abs(dp);
            auto [q, target] = find_ray_point(p, ray);
            if (q < 0) continue;
            if (target.second >= 0) rotate_towards(q, target.second, target.first);
            rotate_towards(p, q, cplx(0.0));
        }
    }

private:
    // Returns (q, (point, r)): move M_qq to `point` on the ray using partner
    // r (r < 0 when M_qq already lies on the ray).
    std::pair<Eigen::Index, std::pair<cplx, Eigen::Index>> find_ray_point(Eigen::Index p, cplx ray) const {
        const Eigen::Index d = m_.rows();
        auto along = [&](cplx z) { return std::conj(ray) * z; };  // ray frame: real axis = ray

        // Score = how far off the ray the chosen point is; smaller is better.
        double best_score = std::numeric_limits<double>::infinity();
        Eigen::Index best_q = -1, best_r = -1;
        cplx best_point = 0.0;

        for (Eigen::Index q = p + 1; q < d; ++q) {
            cplx zq = along(m_(q, q));
            double score = std::abs(zq.imag()) + std::max(0.0, -zq.real());
            if (score < best_score) {
                best_score = score;
                best_q = q;
                best_r = -1;
                best_point = m_(q, q);
            }
        }
        if (best_score < 1e-14) return {best_q, {best_point, -1}};

        for (Eigen::Index q = p + 1; q < d; ++q) {
            for (Eigen::Index r = p + 1; r < d; ++r) {
                if (r == q) continue;
                cplx zq = along(m_(q, q));
                cplx zr = along(m_(r, r));
                double denom = zr.imag() - zq.imag();
                if (std::abs(denom) < 1e-300) continue;
                double lambda = std::clamp(-zq.imag() / denom, 0.0, 1.0);
                cplx z = zq + lambda * (zr - zq);
                double score = std::abs(z.imag()) + std::max(0.0, -z.real());
                if (score < best_score) {
                    best_score = score;
                    best_q = q;
                    best_r = r;
                    best_point = m_(q, q) + lambda * (m_(r, r) - m_(q, q));
                }
            }
        }
        return {best_q, {best_point, best_r}};
    }

    // Plane rotation in (p, q) moving M_pp to the point of [M_pp, M_qq]
    // closest to `target`.
    void rotate_towards(Eigen::Index p, Eigen::Index q, cplx target) {
        const cplx z1 = m_(p, p), z2 = m_(q, q);
        const cplx w = z2 - z1;
        const double len = std::abs(w);
        if (len == 0.0) return;
        const cplx dir = w / len;
        const double s = std::clamp((std::conj(dir) * (target - z1)).real(), 0.0, len);
        if (s == 0.0) return;

        // Phase making the cross term parallel to w keeps v^dagger M v on the
        // line through z1, z2.
        const cplx c1 = std::conj(dir) * m_(p, q);
        const cplx c2 = std::conj(dir) * m_(q, p);
        const double phase = std::atan2(-(c1.imag() + c2.imag()), c1.real() - c2.real());
        const cplx e = std::polar(1.0, phase);
        const double cross = (std::conj(dir) * (e * m_(p, q) + std::conj(e) * m_(q, p))).real();

        // g(t) = len sin^2 t + cross sin t cos t runs from 0 to len on [0, pi/2].
        auto g = [&](double t) { return len * std::sin(t) * std::sin(t) + cross * std::sin(t) * std::cos(t) - s; };
        double lo = 0.0, hi = std::numbers::pi / 2;
        for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
            double mid = 0.5 * (lo + hi);
            if (g(mid) < 0.0) lo = mid; else hi = mid;
        }
        const double t = 0.5 * (lo + hi);
        const double ct = std::cos(t), st = std::sin(t);

        // Columns of G: v_p = c e_p + e s e_q, v_q = -conj(e) s e_p + c e_q.
        const cplx gpp = ct, gqp = e * st, gpq = -std::conj(e) * st, gqq = ct;
        // M <- M G (columns)
        for (Eigen::Index i = 0; i < m_.rows(); ++i) {
            cplx mp = m_(i, p), mq = m_(i, q);
            m_(i, p) = mp * gpp + mq * gqp;
            m_(i, q) = mp * gpq + mq * gqq;
        }
        // M <- G^dagger M, U <- G^dagger U (rows)
        auto rows = [&](Mat& x) {
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                cplx xp = x(p, j), xq = x(q, j);
                x(p, j) = std::conj(gpp) * xp + std::conj(gqp) * xq;
                x(q, j) = std::conj(gpq) * xp + std::conj(gqq) * xq;
            }
        };
        rows(m_);
        rows(u_);
    }

    Mat m_;
    Mat u_;
};

}  // namespace

Mat zero_diagonal_rotation(const Mat& n, const ZeroDiagonalOptions& opts) {
    if (n.rows() != n.cols() || n.rows() == 0) throw ValidationError("zero-diagonal rotation needs a square matrix");
    if (std::abs(n.trace()) >= opts.tol) throw ValidationError("zero-diagonal rotation needs a traceless matrix");
    DiagonalZeroer z(n);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        if (z.max_diag() < opts.tol) return z.unitary();
        z.sweep();
    }
    if (z.max_diag() < opts.tol) return z.unitary();
    throw ConvergenceError("zero-diagonal rotation did not converge");
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Vec> residual_rows(const Mat& alice_basis, const PureState& psi) {
    Mat rows = alice_basis.adjoint() * psi.coefficient_matrix();
    std::vector<Vec> out;
    out.reserve(std::size_t(rows.rows()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) out.emplace_back(rows.row(i).transpose());
    return out;
}

}  // namespace

CanonicalPair walgate_decompose(const PureState& psi1, const PureState& psi2, double orth_tol) {
    Mat n = cross_operator(psi1, psi2, orth_tol);
    Mat u = zero_diagonal_rotation(n, {orth_tol, 100});
    CanonicalPair pair;
    pair.shape = psi1.shape();
    pair.alice_basis = u.adjoint();
    pair.phis = residual_rows(pair.alice_basis, psi1);
    pair.phi_perps = residual_rows(pair.alice_basis, psi2);
    return pair;
}

std::vector<Vec> alice_residuals(const CanonicalPair& pair, const PureState& psi) {
    if (!(psi.shape() == pair.shape)) throw ValidationError("residuals: shape mismatch");
    return residual_rows(pair.alice_basis, psi);
}

std::vector<BobBasis> bob_bases(const CanonicalPair& pair, double zero_tol) {
    const int db = pair.shape.dim_b;
    std::vector<BobBasis> out;
    out.reserve(pair.phis.size());
    for (std::size_t i = 0; i < pair.phis.size(); ++i) {
        std::vector<Vec> lead;
        BobBasis bb;
        if (pair.phis[i].norm() > zero_tol) {
            lead.push_back(pair.phis[i].normalized());
            bb.has_phi = true;
        }
        if (pair.phi_perps[i].norm() > zero_tol && int(lead.size()) < db) {
            Vec w = pair.phi_perps[i];
            for (const auto& q : lead) w -= q.dot(w) * q;
            if (w.norm() > zero_tol) {
                lead.push_back(w.normalized());
                bb.has_perp = true;
            }
        }
        Mat leading(db, Eigen::Index(lead.size()));
        for (std::size_t k = 0; k < lead.size(); ++k) leading.col(Eigen::Index(k)) = lead[k];
        bb.basis = complete_basis(leading, db);
        out.push_back(std::move(bb));
    }
    return out;
}

Vec ResidualExpansion::reconstruct(int i) const {
    const auto& bb = bob_bases[std::size_t(i)];
    const auto& c = coefficients[std::size_t(i)];
    Vec out = Vec::Zero(bb.basis.rows());
    int col = 0;
    if (bb.has_phi) out += c.a * bb.basis.col(col++);
    if (bb.has_perp) out += c.b * bb.basis.col(col++);
    for (const auto& t : c.tail) out += t * bb.basis.col(col++);
    return out;
}

std::vector<ResidualExpansion> expand_residuals(const CanonicalPair& pair, const std::vector<PureState>& others) {
    std::vector<ResidualExpansion> out;
    if (others.empty()) return out;
    auto bases = bob_bases(pair);
    for (const auto& psi : others) {
        auto chis = alice_residuals(pair, psi);
        ResidualExpansion ex;
        ex.bob_bases = bases;
        for (std::size_t i = 0; i < chis.size(); ++i) {
            const auto& bb = bases[i];
            Vec coords = bb.basis.adjoint() * chis[i];
            ResidualCoefficients rc;
            int col = 0;
            if (bb.has_phi) rc.a = coords[col++];
            if (bb.has_perp) rc.b = coords[col++];
            for (; col < coords.size(); ++col) rc.tail.push_back(coords[col]);
            ex.coefficients.push_back(std::move(rc));
        }
        out.push_back(std::move(ex));
    }
    return out;
}

}  // namespace locc
