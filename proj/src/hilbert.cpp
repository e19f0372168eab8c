#include "locclab/hilbert.hpp"

#include <cmath>
#include <string>

#include "locclab/error.hpp"

namespace locc {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

Mat hermitian_part(const Mat& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

SpaceShape::SpaceShape(int a, int b) : dim_a(a), dim_b(b) {
    require(a >= 1 && b >= 1, "party dimensions must be positive");
}

SpaceShape tensor_shape(const SpaceShape& x, const SpaceShape& y) {
    return {x.dim_a * y.dim_a, x.dim_b * y.dim_b};
}

// ---------------------------------------------------------------------------

PureState::PureState(SpaceShape shape, Vec amplitudes, const Tolerances& tol)
    : shape_(shape), amps_(std::move(amplitudes)) {
    require(amps_.size() == shape_.total(), "amplitude length does not match dim_a*dim_b");
    require(std::abs(amps_.norm() - 1.0) < tol.norm, "pure state is not unit norm");
}

PureState PureState::basis(SpaceShape shape, int i_a, int i_b) {
    require(i_a >= 0 && i_a < shape.dim_a && i_b >= 0 && i_b < shape.dim_b, "basis index out of range");
    Vec v = Vec::Zero(shape.total());
    v[i_a * shape.dim_b + i_b] = 1.0;
    return PureState(shape, std::move(v));
}

Mat PureState::coefficient_matrix() const {
    Mat c(shape_.dim_a, shape_.dim_b);
    for (int a = 0; a < shape_.dim_a; ++a)
        for (int b = 0; b < shape_.dim_b; ++b) c(a, b) = amps_[a * shape_.dim_b + b];
    return c;
}

cplx PureState::inner(const PureState& other) const {
    require(shape_ == other.shape_, "inner product of states with different shapes");
    return amps_.dot(other.amps_);
}

// ---------------------------------------------------------------------------

ProductState::ProductState(Vec a_part, Vec b_part, const Tolerances& tol)
    : a_(std::move(a_part)), b_(std::move(b_part)) {
    require(a_.size() >= 1 && b_.size() >= 1, "product state factors must be non-empty");
    require(std::abs(a_.norm() - 1.0) < tol.norm && std::abs(b_.norm() - 1.0) < tol.norm,
            "product state factors must be unit norm");
}

Vec ProductState::embed() const {
    Vec v(a_.size() * b_.size());
    for (Eigen::Index i = 0; i < a_.size(); ++i) v.segment(i * b_.size(), b_.size()) = a_[i] * b_;
    return v;
}

PureState ProductState::to_pure() const { return PureState(shape(), embed()); }

// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(SpaceShape shape, Mat matrix, const Tolerances& tol)
    : shape_(shape), mat_(std::move(matrix)) {
    require(mat_.rows() == shape_.total() && mat_.cols() == shape_.total(),
            "operator size does not match dim_a*dim_b");
    require((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() < tol.herm, "density operator is not Hermitian");
    require(std::abs(mat_.trace() - cplx(1.0)) < tol.norm, "density operator trace is not 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(mat_), Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -tol.psd, "density operator is not positive semidefinite");
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    return DensityOperator(psi.shape(), psi.amplitudes() * psi.amplitudes().adjoint());
}

Eigen::VectorXd DensityOperator::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(mat_), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

int DensityOperator::rank(double cutoff) const {
    auto ev = eigenvalues();
    return int((ev.array() > cutoff).count());
}

// ---------------------------------------------------------------------------

Subspace::Subspace(SpaceShape shape, Mat basis, const Tolerances& tol)
    : shape_(shape), basis_(std::move(basis)) {
    require(basis_.rows() == shape_.total(), "subspace basis has wrong row count");
    require(basis_.cols() <= shape_.total(), "subspace rank exceeds dimension");
    if (basis_.cols() > 0) {
        Mat gram = basis_.adjoint() * basis_;
        require((gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < tol.orth,
                "subspace basis is not orthonormal");
    }
}

Subspace Subspace::span(SpaceShape shape, const std::vector<Vec>& vectors, double cutoff) {
    std::vector<Vec> kept;
    for (const auto& v : vectors) {
        require(v.size() == shape.total(), "spanning vector has wrong length");
        Vec w = v;
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : kept) w -= q.dot(w) * q;
        double n = w.norm();
        if (n > cutoff) kept.push_back(w / n);
    }
    Mat basis(shape.total(), Eigen::Index(kept.size()));
    for (std::size_t k = 0; k < kept.size(); ++k) basis.col(Eigen::Index(k)) = kept[k];
    return Subspace(shape, std::move(basis));
}

Subspace Subspace::full(SpaceShape shape) {
    return Subspace(shape, Mat::Identity(shape.total(), shape.total()));
}

// ---------------------------------------------------------------------------

std::vector<int> regroup_permutation(const SpaceShape& x, const SpaceShape& y) {
    const int a1 = x.dim_a, b1 = x.dim_b, a2 = y.dim_a, b2 = y.dim_b;
    std::vector<int> perm(std::size_t(a1 * b1 * a2 * b2));
    for (int i1 = 0; i1 < a1; ++i1)
        for (int j1 = 0; j1 < b1; ++j1)
            for (int i2 = 0; i2 < a2; ++i2)
                for (int j2 = 0; j2 < b2; ++j2) {
                    int kron = ((i1 * b1 + j1) * a2 + i2) * b2 + j2;
                    int regrouped = (i1 * a2 + i2) * (b1 * b2) + j1 * b2 + j2;
                    perm[std::size_t(kron)] = regrouped;
                }
    return perm;
}

namespace {

Vec kron_vec(const Vec& x, const Vec& y) {
    Vec out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x[i] * y;
    return out;
}

Mat kron_mat(const Mat& x, const Mat& y) {
    Mat out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

}  // namespace

PureState tensor(const PureState& x, const PureState& y) {
    Vec k = kron_vec(x.amplitudes(), y.amplitudes());
    auto perm = regroup_permutation(x.shape(), y.shape());
    Vec out(k.size());
    for (Eigen::Index i = 0; i < k.size(); ++i) out[perm[std::size_t(i)]] = k[i];
    return PureState(tensor_shape(x.shape(), y.shape()), std::move(out));
}

Mat tensor_operator(const Mat& x, const SpaceShape& sx, const Mat& y, const SpaceShape& sy) {
    require(x.rows() == sx.total() && x.cols() == sx.total(), "operator does not match its shape");
    require(y.rows() == sy.total() && y.cols() == sy.total(), "operator does not match its shape");
    Mat k = kron_mat(x, y);
    auto perm = regroup_permutation(sx, sy);
    Mat out(k.rows(), k.cols());
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        for (Eigen::Index j = 0; j < k.cols(); ++j) out(perm[std::size_t(i)], perm[std::size_t(j)]) = k(i, j);
    return out;
}

DensityOperator tensor(const DensityOperator& x, const DensityOperator& y) {
    return DensityOperator(tensor_shape(x.shape(), y.shape()),
                           tensor_operator(x.matrix(), x.shape(), y.matrix(), y.shape()));
}

ProductState tensor(const ProductState& x, const ProductState& y) {
    return ProductState(kron_vec(x.a_part(), y.a_part()), kron_vec(x.b_part(), y.b_part()));
}

Mat tensor_power_operator(const Mat& op, const SpaceShape& shape, int copies) {
    require(copies >= 1, "copy count must be at least 1");
    Mat out = op;
    SpaceShape s = shape;
    for (int k = 1; k < copies; ++k) {
        out = tensor_operator(out, s, op, shape);
        s = tensor_shape(s, shape);
    }
    return out;
}

DensityOperator tensor_power(const DensityOperator& rho, int copies) {
    SpaceShape s = rho.shape();
    for (int k = 1; k < copies; ++k) s = tensor_shape(s, rho.shape());
    return DensityOperator(s, tensor_power_operator(rho.matrix(), rho.shape(), copies));
}

// ---------------------------------------------------------------------------

Mat partial_trace_b(const Mat& op, const SpaceShape& shape) {
    require(op.rows() == shape.total() && op.cols() == shape.total(), "operator does not match shape");
    const int da = shape.dim_a, db = shape.dim_b;
    Mat out = Mat::Zero(da, da);
    for (int a = 0; a < da; ++a)
        for (int ap = 0; ap < da; ++ap) out(a, ap) = op.block(a * db, ap * db, db, db).trace();
    return out;
}

DensityOperator partial_trace_b(const DensityOperator& rho) {
    return DensityOperator({rho.shape().dim_a, 1}, partial_trace_b(rho.matrix(), rho.shape()));
}

Mat projector(const Subspace& sub) {
    require(sub.rank() >= 1, "projector onto an empty subspace");
    return sub.basis() * sub.basis().adjoint();
}

DensityOperator normalized_projector(const Subspace& sub) {
    return DensityOperator(sub.shape(), projector(sub) / double(sub.rank()));
}

Mat complete_basis(const Mat& leading, int dim) {
    require(leading.rows() == dim, "basis completion: wrong row count");
    const Eigen::Index k = leading.cols();
    Mat out(dim, dim);
    if (k == 0) return Mat::Identity(dim, dim);
    Eigen::HouseholderQR<Mat> qr(leading);
    Mat q = qr.householderQ();
    out.leftCols(k) = leading;
    out.rightCols(dim - k) = q.rightCols(dim - k);
    return out;
}

Subspace orthogonal_complement(const Subspace& sub) {
    const int d = sub.shape().total();
    Mat full = complete_basis(sub.basis(), d);
    return Subspace(sub.shape(), full.rightCols(d - sub.rank()));
}

namespace {

Subspace eigen_split(const Mat& op, const SpaceShape& shape, double cutoff, bool want_range) {
    require(op.rows() == shape.total() && op.cols() == shape.total(), "operator does not match shape");
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(op));
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if ((es.eigenvalues()[i] > cutoff) == want_range) cols.push_back(i);
    Mat basis(op.rows(), Eigen::Index(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) basis.col(Eigen::Index(k)) = es.eigenvectors().col(cols[k]);
    return Subspace(shape, std::move(basis));
}

}  // namespace

Subspace range_of(const Mat& op, const SpaceShape& shape, double cutoff) {
    return eigen_split(op, shape, cutoff, true);
}

Subspace kernel_of(const Mat& op, const SpaceShape& shape, double cutoff) {
    return eigen_split(op, shape, cutoff, false);
}

double unitarity_error(const Mat& u) {
    return (u.adjoint() * u - Mat::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace locc
