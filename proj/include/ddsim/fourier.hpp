#pragma once

#include <compare>
#include <complex>
#include <map>

#include <Eigen/Core>

namespace ddsim {

/// Integer lattice displacement l = (l1, l2) of a hopping term.
struct Displacement {
    int x = 0;
    int y = 0;

    auto operator<=>(const Displacement&) const = default;
    Displacement operator-() const { return {-x, -y}; }
};

/// Finite Fourier series sum_l c_l exp(i k.l) over the 2D Brillouin zone.
/// Amplitudes with magnitude below prune_threshold are never stored.
class FourierSeries {
public:
    static constexpr double prune_threshold = 1e-14;
    using Terms = std::map<Displacement, std::complex<double>>;

    FourierSeries() = default;
    explicit FourierSeries(Terms terms);

    static FourierSeries constant(std::complex<double> c);
    static FourierSeries harmonic(Displacement l, std::complex<double> c);

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::complex<double> coeff(Displacement l) const;

    /// Largest |l1| or |l2| among the stored terms (0 for an empty series).
    int max_range() const;

    std::complex<double> operator()(const Eigen::Vector2d& k) const;

    /// The series of conj(f(k)): c'_l = conj(c_{-l}).
    FourierSeries conj_reversed() const;

    bool approx_equal(const FourierSeries& other, double tol) const;

    FourierSeries& operator+=(const FourierSeries& rhs);
    FourierSeries& operator*=(std::complex<double> s);

    friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
    friend FourierSeries operator-(FourierSeries a, const FourierSeries& b) { return a += b * -1.0; }
    friend FourierSeries operator*(FourierSeries a, std::complex<double> s) { return a *= s; }
    friend FourierSeries operator*(std::complex<double> s, FourierSeries a) { return a *= s; }
    friend FourierSeries operator*(const FourierSeries& a, const FourierSeries& b);

    friend bool operator==(const FourierSeries&, const FourierSeries&) = default;

private:
    void prune();

    Terms terms_;
};

} // namespace ddsim
