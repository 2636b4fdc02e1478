#pragma once

#include <random>

#include "qmetro/states.hpp"

namespace qmetro {

using Rng = std::mt19937_64;

/// Haar-ish random state: normalized complex Gaussian vector.
PureState random_pure_state(Rng& rng, int dim);

/// Haar-distributed unitary via QR of a complex Gaussian matrix.
Matrix random_haar_unitary(Rng& rng, int dim);

/// GUE-style random Hermitian matrix with entries of order scale.
HermitianOperator random_hermitian(Rng& rng, int dim, double scale = 1.0);

/// Random density matrix with every eigenvalue >= min_eigenvalue.
HermitianOperator random_density(Rng& rng, int dim,
                                 double min_eigenvalue = 0.0);

/// Random traceless Hermitian matrix (a derivative-like direction).
HermitianOperator random_traceless(Rng& rng, int dim, double scale = 1.0);

/// Random orthonormal projective basis.
MeasurementBasis random_basis(Rng& rng, int dim);

/// Hermitian generator with a random integer spectrum rescaled to unit
/// spectral spread; unitary families built on it are periodic.
HermitianOperator random_commensurate_generator(Rng& rng, int dim,
                                                int max_level = 4);

/// Full-rank qubit family: Bloch vector moving on smooth sinusoids well
/// inside the ball, on the interval [-10, 10].
StateFamily random_smooth_qubit_family(Rng& rng);

/// Random point of the probability simplex.
ProbDist random_distribution(Rng& rng, int dim);

}  // namespace qmetro
