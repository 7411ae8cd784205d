#pragma once

#include <Eigen/Core>

namespace ddsim {

/// Integer frame attached to an impurity line along the coprime lattice
/// vector d = (p, q). The complement c = (a, b) satisfies p b - q a = 1, so
/// U = [d c] is unimodular and every site is r = r_theta d + r_perp c.
/// Momenta split as k_theta = k.d (conserved along the line) and
/// k_perp = k.c, with z = exp(i k_perp).
struct LatticeFrame {
    Eigen::Vector2i direction;
    Eigen::Vector2i complement;

    Eigen::Matrix2i unimodular() const {
        Eigen::Matrix2i u;
        u << direction.x(), complement.x(), direction.y(), complement.y();
        return u;
    }

    Eigen::Vector2i dual_theta() const { return {complement.y(), -complement.x()}; }
    Eigen::Vector2i dual_perp() const { return {-direction.y(), direction.x()}; }

    int r_theta(const Eigen::Vector2i& r) const { return dual_theta().dot(r); }
    int r_perp(const Eigen::Vector2i& r) const { return dual_perp().dot(r); }

    double k_theta(const Eigen::Vector2d& k) const { return k.dot(direction.cast<double>()); }
    double k_perp(const Eigen::Vector2d& k) const { return k.dot(complement.cast<double>()); }

    Eigen::Vector2d momentum(double k_theta, double k_perp) const {
        return k_theta * dual_theta().cast<double>() + k_perp * dual_perp().cast<double>();
    }

    /// Same line with r_perp -> -r_perp.
    LatticeFrame flipped() const { return {-direction, -complement}; }
};

/// Frame for a line along `direction` (must be coprime, nonzero). The
/// complement is reduced so that c.d lies in (-|d|^2/2, |d|^2/2].
LatticeFrame line_frame(const Eigen::Vector2i& direction);

} // namespace ddsim
