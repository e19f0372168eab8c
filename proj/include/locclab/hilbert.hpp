#pragma once

// Dense complex linear algebra on a bipartite space H_A (x) H_B.
//
// Index convention: a vector on H_A (x) H_B is stored row-major over
// (i_A, i_B), i.e. flat index = i_A * dim_b + i_B. Tensor products of two
// bipartite objects regroup the parties so the result is again A:B, with
// Alice's factors contiguous: (A1 A2):(B1 B2).

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace locc {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

struct Tolerances {
    double norm = 1e-9;
    double orth = 1e-9;
    double herm = 1e-9;
    double psd = 1e-9;
};

inline constexpr Tolerances kDefaultTol{};

struct SpaceShape {
    int dim_a = 1;
    int dim_b = 1;

    SpaceShape() = default;
    SpaceShape(int a, int b);

    int total() const { return dim_a * dim_b; }
    bool operator==(const SpaceShape&) const = default;
};

// Party-wise product shape: (a1*a2, b1*b2).
SpaceShape tensor_shape(const SpaceShape& x, const SpaceShape& y);

class PureState {
public:
    PureState(SpaceShape shape, Vec amplitudes, const Tolerances& tol = kDefaultTol);

    // Computational basis state |i_a>|i_b>.
    static PureState basis(SpaceShape shape, int i_a, int i_b);

    const SpaceShape& shape() const { return shape_; }
    const Vec& amplitudes() const { return amps_; }

    // Amplitudes viewed as a dim_a x dim_b coefficient matrix.
    Mat coefficient_matrix() const;

    cplx inner(const PureState& other) const;  // <this|other>

private:
    SpaceShape shape_;
    Vec amps_;
};

class ProductState {
public:
    ProductState(Vec a_part, Vec b_part, const Tolerances& tol = kDefaultTol);

    const Vec& a_part() const { return a_; }
    const Vec& b_part() const { return b_; }
    SpaceShape shape() const { return {int(a_.size()), int(b_.size())}; }

    Vec embed() const;
    PureState to_pure() const;

private:
    Vec a_;
    Vec b_;
};

class DensityOperator {
public:
    DensityOperator(SpaceShape shape, Mat matrix, const Tolerances& tol = kDefaultTol);

    static DensityOperator from_pure(const PureState& psi);

    const SpaceShape& shape() const { return shape_; }
    const Mat& matrix() const { return mat_; }

    // Eigenvalues in ascending order.
    Eigen::VectorXd eigenvalues() const;
    int rank(double cutoff = 1e-9) const;

private:
    SpaceShape shape_;
    Mat mat_;
};

// Orthonormal basis (columns) of a subspace of H_A (x) H_B.
class Subspace {
public:
    // Columns must already be orthonormal.
    Subspace(SpaceShape shape, Mat basis, const Tolerances& tol = kDefaultTol);

    // Orthonormalizes arbitrary spanning vectors; drops directions whose
    // residual norm falls below `cutoff`.
    static Subspace span(SpaceShape shape, const std::vector<Vec>& vectors, double cutoff = 1e-9);
    static Subspace full(SpaceShape shape);

    const SpaceShape& shape() const { return shape_; }
    const Mat& basis() const { return basis_; }
    int rank() const { return int(basis_.cols()); }

private:
    SpaceShape shape_;
    Mat basis_;
};

// Index permutation taking kron order (a1, b1, a2, b2) to the regrouped
// order (a1, a2, b1, b2): regrouped[perm[k]] = kron[k].
std::vector<int> regroup_permutation(const SpaceShape& x, const SpaceShape& y);

PureState tensor(const PureState& x, const PureState& y);
DensityOperator tensor(const DensityOperator& x, const DensityOperator& y);
ProductState tensor(const ProductState& x, const ProductState& y);
// Raw operator version, used for unnormalized projectors.
Mat tensor_operator(const Mat& x, const SpaceShape& sx, const Mat& y, const SpaceShape& sy);

DensityOperator tensor_power(const DensityOperator& rho, int copies);
Mat tensor_power_operator(const Mat& op, const SpaceShape& shape, int copies);

// Tr_B of an arbitrary (not necessarily Hermitian) operator on `shape`.
Mat partial_trace_b(const Mat& op, const SpaceShape& shape);
DensityOperator partial_trace_b(const DensityOperator& rho);

Mat projector(const Subspace& sub);
DensityOperator normalized_projector(const Subspace& sub);
Subspace orthogonal_complement(const Subspace& sub);

// Range of a PSD operator: eigenvectors with eigenvalue > cutoff.
Subspace range_of(const Mat& op, const SpaceShape& shape, double cutoff = 1e-9);
// Kernel of a PSD operator: eigenvectors with eigenvalue <= cutoff.
Subspace kernel_of(const Mat& op, const SpaceShape& shape, double cutoff = 1e-9);

// Orthonormal completion: returns a unitary whose leading columns are the
// (already orthonormal) columns of `leading`.
Mat complete_basis(const Mat& leading, int dim);

double unitarity_error(const Mat& u);

}  // namespace locc
