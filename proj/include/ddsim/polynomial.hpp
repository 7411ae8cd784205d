#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ddsim/error.hpp"

namespace ddsim {

/// Laurent polynomial sum_{p=low}^{high} c_p x^p with dense coefficient
/// storage. An ordinary polynomial is the special case low() >= 0. The zero
/// polynomial has no stored coefficients.
template <typename Scalar>
class LaurentPoly {
public:
    using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using RealScalar = typename Eigen::NumTraits<Scalar>::Real;

    LaurentPoly() = default;

    /// Coefficients c_low, c_{low+1}, ... in ascending order.
    LaurentPoly(int low, Coeffs coeffs) : low_(low), coeffs_(std::move(coeffs)) {}

    static LaurentPoly constant(const Scalar& c) { return monomial(0, c); }

    static LaurentPoly monomial(int power, const Scalar& c) {
        Coeffs v(1);
        v(0) = c;
        return LaurentPoly(power, v);
    }

    bool is_zero() const { return coeffs_.size() == 0; }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    const Coeffs& coeffs() const { return coeffs_; }

    Scalar coeff(int power) const {
        const int idx = power - low_;
        if (idx < 0 || idx >= coeffs_.size()) return Scalar(0);
        return coeffs_(idx);
    }

    template <typename T>
    auto operator()(const T& x) const -> decltype(Scalar{} * T{}) {
        using Result = decltype(Scalar{} * T{});
        if (is_zero()) return Result(0);
        Result acc(0);
        for (Eigen::Index j = coeffs_.size() - 1; j >= 0; --j) acc = acc * x + coeffs_(j);
        return acc * int_pow(x, low_);
    }

    LaurentPoly derivative() const {
        if (is_zero()) return {};
        Coeffs d(coeffs_.size());
        for (Eigen::Index j = 0; j < coeffs_.size(); ++j)
            d(j) = coeffs_(j) * static_cast<RealScalar>(low_ + j);
        LaurentPoly out(low_ - 1, d);
        out.trim();
        return out;
    }

    /// Drops leading and trailing coefficients with magnitude <= tol.
    LaurentPoly& trim(RealScalar tol = RealScalar(0)) {
        Eigen::Index first = 0;
        Eigen::Index last = coeffs_.size() - 1;
        while (first <= last && std::abs(coeffs_(first)) <= tol) ++first;
        while (last >= first && std::abs(coeffs_(last)) <= tol) --last;
        if (first > last) {
            low_ = 0;
            coeffs_.resize(0);
            return *this;
        }
        coeffs_ = Coeffs(coeffs_.segment(first, last - first + 1));
        low_ += static_cast<int>(first);
        return *this;
    }

    LaurentPoly& operator+=(const LaurentPoly& rhs) {
        if (rhs.is_zero()) return *this;
        if (is_zero()) return *this = rhs;
        const int lo = std::min(low_, rhs.low_);
        const int hi = std::max(high(), rhs.high());
        Coeffs sum = Coeffs::Zero(hi - lo + 1);
        sum.segment(low_ - lo, coeffs_.size()) += coeffs_;
        sum.segment(rhs.low_ - lo, rhs.coeffs_.size()) += rhs.coeffs_;
        low_ = lo;
        coeffs_ = std::move(sum);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& rhs) { return *this += rhs * Scalar(-1); }

    LaurentPoly& operator*=(const Scalar& s) {
        coeffs_ *= s;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const Scalar& s) { return a *= s; }
    friend LaurentPoly operator*(const Scalar& s, LaurentPoly a) { return a *= s; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        Coeffs prod = Coeffs::Zero(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (Eigen::Index i = 0; i < a.coeffs_.size(); ++i)
            prod.segment(i, b.coeffs_.size()) += a.coeffs_(i) * b.coeffs_;
        return LaurentPoly(a.low_ + b.low_, prod);
    }

private:
    template <typename T>
    static T int_pow(const T& x, int p) {
        T result(1);
        T base = p < 0 ? T(1) / x : x;
        for (int e = std::abs(p); e > 0; e >>= 1) {
            if (e & 1) result *= base;
            base *= base;
        }
        return result;
    }

    int low_ = 0;
    Coeffs coeffs_;
};

using CLaurent = LaurentPoly<std::complex<double>>;
using RPoly = LaurentPoly<double>;

/// Nonzero roots of a Laurent polynomial, i.e. the roots of x^{-low} p(x),
/// from the eigenvalues of its companion matrix followed by a guarded Newton
/// polish. Leading and trailing coefficients must be nonzero.
inline std::vector<std::complex<double>> companion_roots(const CLaurent& p) {
    using cd = std::complex<double>;
    if (p.is_zero()) throw NumericalError("companion_roots: zero polynomial");
    const auto& c = p.coeffs();
    const Eigen::Index degree = c.size() - 1;
    if (degree == 0) return {};
    if (c(degree) == cd(0) || c(0) == cd(0))
        throw NumericalError("companion_roots: polynomial not trimmed");

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -c(i) / c(degree);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw NumericalError("companion_roots: eigensolver failed");

    const CLaurent shifted(0, c);
    const CLaurent dshifted = shifted.derivative();
    std::vector<cd> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + degree);
    for (auto& z : roots) {
        for (int it = 0; it < 3; ++it) {
            const cd f = shifted(z);
            const cd df = dshifted(z);
            if (df == cd(0)) break;
            const cd candidate = z - f / df;
            if (std::abs(shifted(candidate)) < std::abs(f)) z = candidate;
            else break;
        }
    }
    return roots;
}

/// Determinant of an n x n matrix of (Laurent) polynomials stored row-major,
/// by cofactor expansion along the first row. Exact in the coefficients;
/// intended for small n.
template <typename Scalar>
LaurentPoly<Scalar> determinant(const std::vector<LaurentPoly<Scalar>>& m, int n) {
    if (static_cast<int>(m.size()) != n * n) throw std::invalid_argument("determinant: size mismatch");
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    LaurentPoly<Scalar> det;
    std::vector<LaurentPoly<Scalar>> minor((n - 1) * (n - 1));
    for (int col = 0; col < n; ++col) {
        if (m[col].is_zero()) continue;
        for (int r = 1; r < n; ++r)
            for (int c = 0, mc = 0; c < n; ++c)
                if (c != col) minor[(r - 1) * (n - 1) + mc++] = m[r * n + c];
        const LaurentPoly<Scalar> term = m[col] * determinant(minor, n - 1);
        if (col % 2 == 0) det += term;
        else det -= term;
    }
    return det;
}

/// Sylvester matrix of f and g using formal degrees (the formal leading
/// coefficient may vanish). Rows hold coefficients in descending order.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sylvester_matrix(
    const LaurentPoly<Scalar>& f, int deg_f, const LaurentPoly<Scalar>& g, int deg_g) {
    if ((!f.is_zero() && (f.low() < 0 || f.high() > deg_f)) ||
        (!g.is_zero() && (g.low() < 0 || g.high() > deg_g)))
        throw std::invalid_argument("sylvester_matrix: coefficients outside formal degree");
    const int n = deg_f + deg_g;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> s =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (int row = 0; row < deg_g; ++row)
        for (int j = 0; j <= deg_f; ++j) s(row, row + j) = f.coeff(deg_f - j);
    for (int row = 0; row < deg_f; ++row)
        for (int j = 0; j <= deg_g; ++j) s(deg_g + row, row + j) = g.coeff(deg_g - j);
    return s;
}

template <typename Scalar>
Scalar resultant(const LaurentPoly<Scalar>& f, int deg_f, const LaurentPoly<Scalar>& g, int deg_g) {
    if (deg_f + deg_g == 0) return Scalar(1);
    return sylvester_matrix(f, deg_f, g, deg_g).determinant();
}

} // namespace ddsim
