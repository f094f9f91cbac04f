#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gcdh/errors.hpp"
#include "gcdh/random.hpp"

namespace gcdh {

using Complex = std::complex<double>;

/// Square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    ComplexMatrix adjoint() const;
    /// Largest absolute entry of A - B.
    friend double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t n_ = 0;
    std::vector<Complex> a_;
};

/// Hermitian n x n matrix. Every constructor either validates or produces an
/// exactly Hermitian result, so downstream code may rely on the invariant.
class HermitianMatrix {
public:
    static constexpr double kTolerance = 1e-12;

    HermitianMatrix() = default;

    /// Row-major entries; throws ValidationError unless
    /// |a_ij - conj(a_ji)| <= 1e-12 and |Im a_ii| <= 1e-12.
    static HermitianMatrix from_entries(std::size_t n, std::vector<Complex> entries);
    static HermitianMatrix diagonal(std::span<const double> d);
    /// (A + A*) / 2.
    static HermitianMatrix hermitian_part(const ComplexMatrix& a);

    std::size_t size() const { return a_.size(); }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_(i, j); }
    const ComplexMatrix& matrix() const { return a_; }

    double trace() const;
    double frobenius_norm() const;
    /// U H U*.
    HermitianMatrix conjugated(const ComplexMatrix& u) const;

    HermitianMatrix& operator+=(const HermitianMatrix& other);
    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }

private:
    explicit HermitianMatrix(ComplexMatrix a) : a_(std::move(a)) {}
    ComplexMatrix a_;
};

/// Real eigenvalues, sorted descending.
struct Spectrum {
    std::vector<double> values;
};

struct EigenDecomposition {
    Spectrum spectrum;
    ComplexMatrix vectors; ///< column j pairs with spectrum.values[j]
};

/// Eigenvalues by cyclic complex Jacobi rotations. Throws std::runtime_error
/// if the off-diagonal norm has not dropped below 1e-13 ||H||_F after 100 sweeps.
Spectrum eig_h(const HermitianMatrix& h);
EigenDecomposition eig_h_vectors(const HermitianMatrix& h);

/// Haar-distributed unitary: Ginibre matrix, Householder QR, then each column
/// of Q is multiplied by the phase of the matching diagonal entry of R.
ComplexMatrix haar_unitary(std::size_t n, RandomStream& rng);

/// Leading k x k block, 1 <= k <= n.
HermitianMatrix principal_submatrix(const HermitianMatrix& h, std::size_t k);

} // namespace gcdh
