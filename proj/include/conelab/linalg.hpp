#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace conelab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

using Rng = std::mt19937_64;

inline constexpr double kSpectralTol = 1e-9;
inline constexpr double kWitnessTol = 1e-7;

/// Orthonormal basis (columns) of the numerical null space of `m`.
Matrix null_space(const Matrix& m, double rel_tol = 1e-9);

std::size_t numerical_rank(const Matrix& m, double rel_tol = 1e-9);

Vector gaussian_vector(std::size_t n, Rng& rng);
CVector gaussian_cvector(std::size_t n, Rng& rng);

/// Row-major reshape of a length rows*cols vector: m(i, j) = v[i * cols + j].
Matrix reshape_rows(const Vector& v, std::size_t rows, std::size_t cols);
Vector flatten_rows(const Matrix& m);

Vector kron(const Vector& a, const Vector& b);

double max_abs(const Matrix& m);

}  // namespace conelab
