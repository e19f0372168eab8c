#include "locclab/random.hpp"

#include <cmath>
#include <numbers>

#include "locclab/error.hpp"

namespace locc {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 finalizer over base + golden-ratio stride
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(Rng& rng) { return double(rng() >> 11) * 0x1.0p-53; }

cplx gaussian_complex(Rng& rng) {
    double u1 = 1.0 - uniform01(rng);  // (0, 1]
    double u2 = uniform01(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    return std::polar(r, 2.0 * std::numbers::pi * u2) * std::sqrt(0.5);
}

Vec random_unit_vector(int dim, Rng& rng) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = gaussian_complex(rng);
    return v.normalized();
}

Mat random_unitary(int dim, Rng& rng) {
    Mat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = gaussian_complex(rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix column phases so the distribution is Haar
    for (int j = 0; j < dim; ++j) {
        cplx d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

std::vector<PureState> random_orthogonal_states(SpaceShape shape, int count, Rng& rng) {
    if (count < 0 || count > shape.total()) throw ValidationError("more orthogonal states requested than dimensions");
    Mat u = random_unitary(shape.total(), rng);
    std::vector<PureState> out;
    out.reserve(std::size_t(count));
    for (int k = 0; k < count; ++k) out.emplace_back(shape, u.col(k));
    return out;
}

int sample_index(const std::vector<double>& weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw ValidationError("cannot sample from all-zero weights");
    double x = uniform01(rng) * total;
    int last_positive = -1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        last_positive = int(i);
        if (x < weights[i]) return int(i);
        x -= weights[i];
    }
    return last_positive;
}

}  // namespace locc
