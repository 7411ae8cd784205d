#include "ddsim/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace ddsim {

FourierSeries::FourierSeries(Terms terms) : terms_(std::move(terms)) { prune(); }

FourierSeries FourierSeries::constant(std::complex<double> c) { return harmonic({0, 0}, c); }

FourierSeries FourierSeries::harmonic(Displacement l, std::complex<double> c) {
    return FourierSeries(Terms{{l, c}});
}

std::complex<double> FourierSeries::coeff(Displacement l) const {
    const auto it = terms_.find(l);
    return it == terms_.end() ? std::complex<double>(0) : it->second;
}

int FourierSeries::max_range() const {
    int r = 0;
    for (const auto& [l, c] : terms_) r = std::max({r, std::abs(l.x), std::abs(l.y)});
    return r;
}

std::complex<double> FourierSeries::operator()(const Eigen::Vector2d& k) const {
    std::complex<double> sum(0);
    for (const auto& [l, c] : terms_) sum += c * std::polar(1.0, k.x() * l.x + k.y() * l.y);
    return sum;
}

FourierSeries FourierSeries::conj_reversed() const {
    Terms out;
    for (const auto& [l, c] : terms_) out.emplace(-l, std::conj(c));
    return FourierSeries(std::move(out));
}

bool FourierSeries::approx_equal(const FourierSeries& other, double tol) const {
    for (const auto& [l, c] : terms_)
        if (std::abs(c - other.coeff(l)) > tol) return false;
    for (const auto& [l, c] : other.terms_)
        if (std::abs(c - coeff(l)) > tol) return false;
    return true;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& rhs) {
    for (const auto& [l, c] : rhs.terms_) terms_[l] += c;
    prune();
    return *this;
}

FourierSeries& FourierSeries::operator*=(std::complex<double> s) {
    for (auto& [l, c] : terms_) c *= s;
    prune();
    return *this;
}

FourierSeries operator*(const FourierSeries& a, const FourierSeries& b) {
    FourierSeries::Terms out;
    for (const auto& [la, ca] : a.terms_)
        for (const auto& [lb, cb] : b.terms_) out[{la.x + lb.x, la.y + lb.y}] += ca * cb;
    return FourierSeries(std::move(out));
}

void FourierSeries::prune() {
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < prune_threshold; });
}

} // namespace ddsim
