#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ddsim/frame.hpp"
#include "ddsim/model.hpp"
#include "ddsim/polynomial.hpp"

namespace ddsim {

/// g(E + i eta, k_theta, z) for an impurity line with the given frame,
/// z = exp(i k_perp). For q = 1, g = E + i eta - H; for q > 1 it is
/// det[(E + i eta) I - H]. The Laurent form is z^-m P(z) with P of degree
/// m + n and nonzero end coefficients.
struct BoundaryPoly {
    std::complex<double> energy;
    double eta = 0;
    double k_theta = 0;
    CLaurent laurent;
    int m = 0; // pole order at z = 0
    int n = 0; // highest positive power

    /// P(z) = z^m g(z).
    CLaurent cleared() const;
};

BoundaryPoly boundary_polynomial(const BlochModel& model, const LatticeFrame& frame, double k_theta,
                                 std::complex<double> energy, double eta);

/// H(k_theta, z) entry-wise as Laurent polynomials in z.
std::vector<CLaurent> line_hamiltonian(const BlochModel& model, const LatticeFrame& frame, double k_theta);

struct Pole {
    std::complex<double> z;
    double modulus;
    std::complex<double> residue; // 2 pi i Res[(z g)^-1]
};

enum class Classification { Conventional, Anomalous };
std::string_view to_string(Classification c);

struct EtaStep {
    double eta;
    double in_max;  // |z_in^max|
    double out_min; // |z_out^min|
    int winding;
};

struct ScatterReport {
    std::vector<Pole> poles_in;  // sorted by decreasing |z|
    std::vector<Pole> poles_out; // sorted by increasing |z|
    int m = 0, n = 0;
    int winding = 0;
    bool on_circle = false; // some root within 1e-9 of |z| = 1

    // filled by classify_scattering
    LatticeFrame frame{};
    bool frame_flipped = false;
    Eigen::Vector2d k_incident = Eigen::Vector2d::Zero();
    std::complex<double> energy;
    double k_theta = 0;
    Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
    Classification classification = Classification::Conventional;
    std::complex<double> dominant_in, dominant_out;
    double kappa = 0;          // reflected decay rate (0 when conventional)
    double kappa_in = 0;       // extrapolated ln|z_in^max| (should vanish)
    double linearity_residual = 0; // relative residual of ln|z_out^min| vs eta
    std::optional<Eigen::Vector2d> partner; // propagating reflected momentum
    std::vector<EtaStep> schedule;
    std::vector<std::string> warnings;
};

/// Roots of P via the companion matrix, partitioned by |z| vs 1, with
/// residues C = 2 pi i z^(m-1) / P'(z). Throws NumericalError on a multiple
/// root.
ScatterReport pole_partition(const BoundaryPoly& bp);

/// Winding of g around the unit circle, computed both as (roots inside) - m
/// and by the argument principle on 4096 samples. Throws NumericalError if
/// they disagree or a root sits on the circle.
int winding_number(const BoundaryPoly& bp);

/// Argument-principle estimate alone (not rounded).
double winding_by_argument(const BoundaryPoly& bp, int samples = 4096);

struct ClassifyOptions {
    std::vector<double> eta_schedule{1e-2, 1e-3, 1e-4};
    double kappa_threshold = 1e-3;
    /// Pick the band whose Re E is nearest this value; otherwise the band
    /// with the largest Im E at k_i.
    std::optional<double> omega;
};

/// Conventional iff |z_out^min| -> 1 as eta -> 0+ (linear extrapolation of
/// ln|z_out^min| from the last two schedule points stays below the
/// threshold). The frame is flipped when the incident velocity points
/// towards -r_perp. Throws NumericalError if the inside pole does not reach
/// the unit circle.
ScatterReport classify_scattering(const BlochModel& model, const Eigen::Vector2d& k_incident,
                                  const Eigen::Vector2i& direction, const ClassifyOptions& options = {});

struct ProfilePoint {
    int r_perp;
    std::complex<double> value;
};

struct ScatteredProfile {
    ScatterReport report;
    double eta;
    std::complex<double> g0;   // lattice Green's function at r_perp = 0
    std::complex<double> psi0; // total wave on the line, incident amplitude 1
    std::vector<ProfilePoint> points;
};

/// Lattice Green's function along the line, G(r) = (1/2 pi i) oint z^(r-1)/g dz,
/// from the pole sums (inside poles for r >= 0, outside poles for r <= 0).
std::complex<double> line_green(const ScatterReport& poles, int r_perp);

/// Single-band scattered wave phi_s(r) = lambda psi(0) G(r) with
/// psi(0) = 1 / (1 - lambda G(0)), evaluated at the given eta (default the
/// last schedule entry). Throws NumericalError near an impurity bound state.
ScatteredProfile scattered_profile(const BlochModel& model, const Eigen::Vector2d& k_incident,
                                   const Eigen::Vector2i& direction, double lambda, int r_min, int r_max,
                                   const ClassifyOptions& options = {});

struct ProtectedDirection {
    Eigen::Vector2i direction;
    std::string guarantee; // symmetry that protects it, e.g. "Mx" or "T*My"
};

/// Impurity-line directions for which every incident state scatters
/// conventionally: the line parallel to the mirror line of each band mirror
/// symmetry, and the perpendicular line for each reciprocity-mirror
/// composite. Duplicates are merged (first guarantee kept).
std::vector<ProtectedDirection> symmetry_protected_directions(const BlochModel& model, int grid_n = 32,
                                                              double tol = 1e-9);

/// re,im,abs_z,side,C_re,C_im
std::string poles_csv(const ScatterReport& r);
/// key=value summary line
std::string scatter_summary(const ScatterReport& r);
/// r_perp,re,im,abs
std::string profile_csv(const ScatteredProfile& p);

} // namespace ddsim
