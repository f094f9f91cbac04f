#include "gcdh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gcdh {

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.n_ != b.n_)
        throw ValidationError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.a_.size(); ++i)
        m = std::max(m, std::abs(a.a_[i] - b.a_[i]));
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.n_ != b.n_)
        throw ValidationError("matrix product: dimension mismatch");
    const std::size_t n = a.n_;
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) += aik * b(k, j);
        }
    return r;
}

HermitianMatrix HermitianMatrix::from_entries(std::size_t n, std::vector<Complex> entries)
{
    if (entries.size() != n * n)
        throw ValidationError("HermitianMatrix: expected " + std::to_string(n * n) + " entries, got "
                              + std::to_string(entries.size()));
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = entries[i * n + j];
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(a(i, i).imag()) > kTolerance)
            throw ValidationError("HermitianMatrix: diagonal entry " + std::to_string(i) + " is not real");
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > kTolerance)
                throw ValidationError("HermitianMatrix: entries (" + std::to_string(i) + "," + std::to_string(j)
                                      + ") and (" + std::to_string(j) + "," + std::to_string(i)
                                      + ") are not conjugate");
    }
    return hermitian_part(a);
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d)
{
    ComplexMatrix a(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        a(i, i) = d[i];
    return HermitianMatrix(std::move(a));
}

HermitianMatrix HermitianMatrix::hermitian_part(const ComplexMatrix& a)
{
    const std::size_t n = a.size();
    ComplexMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return HermitianMatrix(std::move(h));
}

double HermitianMatrix::trace() const
{
    double t = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        t += a_(i, i).real();
    return t;
}

double HermitianMatrix::frobenius_norm() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            s += std::norm(a_(i, j));
    return std::sqrt(s);
}

HermitianMatrix HermitianMatrix::conjugated(const ComplexMatrix& u) const
{
    return hermitian_part(u * a_ * u.adjoint());
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other)
{
    if (other.size() != size())
        throw ValidationError("HermitianMatrix sum: dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            a_(i, j) += other.a_(i, j);
    return *this;
}

namespace {

constexpr double kJacobiTolerance = 1e-13;
constexpr int kMaxSweeps = 100;

// Cyclic Jacobi. Each rotation J = diag(1, conj(e)) * [[c, s], [-s, c]]
// first removes the phase e of a_pq and then annihilates the real remainder.
EigenDecomposition jacobi(const HermitianMatrix& h, bool want_vectors)
{
    const std::size_t n = h.size();
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();
    const double norm = h.frobenius_norm();

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > kJacobiTolerance * norm) {
        if (++sweep > kMaxSweeps)
            throw std::runtime_error("eig_h: Jacobi iteration did not converge in 100 sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0)
                    continue;
                const Complex e = apq / r;
                const Complex ec = std::conj(e);
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                double t;
                if (std::abs(theta) > 1e150)
                    t = 0.5 / theta;
                else
                    t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * ec * akq;
                    a(k, q) = s * akp + c * ec * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * e * aqk;
                    a(q, k) = s * apk + c * e * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;

                if (want_vectors)
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = v(k, p);
                        const Complex vkq = v(k, q);
                        v(k, p) = c * vkp - s * ec * vkq;
                        v(k, q) = s * vkp + c * ec * vkq;
                    }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition out;
    out.spectrum.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.spectrum.values[i] = a(order[i], order[i]).real();
    if (want_vectors) {
        out.vectors = ComplexMatrix(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                out.vectors(k, j) = v(k, order[j]);
    }
    return out;
}

} // namespace

Spectrum eig_h(const HermitianMatrix& h)
{
    return jacobi(h, false).spectrum;
}

EigenDecomposition eig_h_vectors(const HermitianMatrix& h)
{
    return jacobi(h, true);
}

ComplexMatrix haar_unitary(std::size_t n, RandomStream& rng)
{
    if (n == 0)
        throw ValidationError("haar_unitary: dimension n must be >= 1");

    ComplexMatrix g(n);
    const double scale = std::sqrt(0.5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            g(i, j) = Complex(re, im) * scale;
        }

    // Householder QR; reflectors are kept for forming Q explicitly.
    std::vector<std::vector<Complex>> reflectors(n);
    std::vector<Complex> r_diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i)
            xnorm2 += std::norm(g(i, k));
        const double xnorm = std::sqrt(xnorm2);
        const Complex x0 = g(k, k);
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
        const Complex alpha = -phase * xnorm;

        std::vector<Complex> w(n - k);
        for (std::size_t i = k; i < n; ++i)
            w[i - k] = g(i, k);
        w[0] -= alpha;
        double wnorm2 = 0.0;
        for (const Complex& wi : w)
            wnorm2 += std::norm(wi);
        if (wnorm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(wnorm2);
            for (Complex& wi : w)
                wi *= inv;
            for (std::size_t j = k; j < n; ++j) {
                Complex dot = 0.0;
                for (std::size_t i = k; i < n; ++i)
                    dot += std::conj(w[i - k]) * g(i, j);
                for (std::size_t i = k; i < n; ++i)
                    g(i, j) -= 2.0 * w[i - k] * dot;
            }
        } else {
            w.assign(n - k, Complex(0.0));
        }
        r_diag[k] = g(k, k);
        reflectors[k] = std::move(w);
    }

    ComplexMatrix q = ComplexMatrix::identity(n);
    for (std::size_t kk = n; kk-- > 0;) {
        const auto& w = reflectors[kk];
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot = 0.0;
            for (std::size_t i = kk; i < n; ++i)
                dot += std::conj(w[i - kk]) * q(i, j);
            for (std::size_t i = kk; i < n; ++i)
                q(i, j) -= 2.0 * w[i - kk] * dot;
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        const double mag = std::abs(r_diag[j]);
        const Complex phase = mag > 0.0 ? r_diag[j] / mag : Complex(1.0);
        for (std::size_t i = 0; i < n; ++i)
            q(i, j) *= phase;
    }
    return q;
}

HermitianMatrix principal_submatrix(const HermitianMatrix& h, std::size_t k)
{
    if (k < 1 || k > h.size())
        throw ValidationError("principal_submatrix: size k=" + std::to_string(k) + " outside [1, "
                              + std::to_string(h.size()) + "]");
    ComplexMatrix b(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            b(i, j) = h(i, j);
    return HermitianMatrix::hermitian_part(b);
}

} // namespace gcdh
