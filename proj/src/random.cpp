#include "qmetro/random.hpp"

#include <cmath>

namespace qmetro {

namespace {

Matrix gaussian_matrix(Rng& rng, int dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            g(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    return g;
}

}  // namespace

PureState random_pure_state(Rng& rng, int dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(dim);
    for (int k = 0; k < dim; ++k) v(k) = Complex(normal(rng), normal(rng));
    return PureState(v / v.norm());
}

Matrix random_haar_unitary(Rng& rng, int dim) {
    const Matrix g = gaussian_matrix(rng, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < dim; ++c) {
        const Complex z = r(c, c);
        q.col(c) *= std::abs(z) > 0 ? z / std::abs(z) : Complex(1, 0);
    }
    return q;
}

HermitianOperator random_hermitian(Rng& rng, int dim, double scale) {
    const Matrix g = scale * gaussian_matrix(rng, dim);
    return HermitianOperator(0.5 * (g + g.adjoint().eval()));
}

HermitianOperator random_density(Rng& rng, int dim, double min_eigenvalue) {
    if (min_eigenvalue * dim >= 1.0) {
        throw std::invalid_argument("random_density: floor too large");
    }
    std::exponential_distribution<double> expo(1.0);
    RVector w(dim);
    for (int k = 0; k < dim; ++k) w(k) = expo(rng);
    w = min_eigenvalue * RVector::Ones(dim) +
        (1.0 - dim * min_eigenvalue) * w / w.sum();
    const Matrix u = random_haar_unitary(rng, dim);
    return HermitianOperator(u * w.asDiagonal() * u.adjoint());
}

HermitianOperator random_traceless(Rng& rng, int dim, double scale) {
    Matrix m = random_hermitian(rng, dim, scale).mat();
    m -= (m.trace() / static_cast<double>(dim)) *
         Matrix::Identity(dim, dim);
    return HermitianOperator(m);
}

MeasurementBasis random_basis(Rng& rng, int dim) {
    return MeasurementBasis(random_haar_unitary(rng, dim), "random");
}

HermitianOperator random_commensurate_generator(Rng& rng, int dim,
                                                int max_level) {
    std::uniform_int_distribution<int> level(0, max_level);
    RVector w(dim);
    while (true) {
        for (int k = 0; k < dim; ++k) w(k) = level(rng);
        if (w.maxCoeff() > w.minCoeff()) break;
    }
    w /= w.maxCoeff() - w.minCoeff();  // unit spectral spread
    const Matrix u = random_haar_unitary(rng, dim);
    return HermitianOperator(u * w.asDiagonal() * u.adjoint());
}

StateFamily random_smooth_qubit_family(Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Vector3d dir(normal(rng), normal(rng), normal(rng));
    dir.normalize();
    const Eigen::Vector3d center = (0.3 * uni(rng)) * dir;
    const double amp = 0.1 + 0.2 * uni(rng);
    Eigen::Vector3d freq, phase;
    for (int k = 0; k < 3; ++k) {
        freq(k) = 0.5 + 1.5 * uni(rng);
        phase(k) = 2.0 * M_PI * uni(rng);
    }
    auto evaluator = [center, amp, freq, phase](double lam) -> Matrix {
        Eigen::Vector3d r = center;
        for (int k = 0; k < 3; ++k) {
            r(k) += amp * std::sin(freq(k) * lam + phase(k));
        }
        Matrix m(2, 2);
        m << 1.0 + r(2), Complex(r(0), -r(1)), Complex(r(0), r(1)),
            1.0 - r(2);
        return 0.5 * m;
    };
    return StateFamily::mixed_map(std::move(evaluator), -10.0, 10.0,
                                  "random_smooth_qubit");
}

ProbDist random_distribution(Rng& rng, int dim) {
    std::exponential_distribution<double> expo(1.0);
    RVector p(dim);
    for (int k = 0; k < dim; ++k) p(k) = expo(rng);
    return ProbDist::from_raw(p / p.sum());
}

}  // namespace qmetro
