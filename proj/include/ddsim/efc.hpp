#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "ddsim/model.hpp"
#include "ddsim/polynomial.hpp"

namespace ddsim {

/// det[H(k) - (omega + i s) I] = f_r(s) + i f_i(s) for real s = Im E.
struct CharSplit {
    RPoly f_r;
    RPoly f_i;
    int degree; // formal degree q of both
};

/// Requires q <= 4.
CharSplit char_split(const BlochModel& model, const Eigen::Vector2d& k, double omega);

/// Resultant of (f_r, f_i) in Im E, from the 2q x 2q Sylvester matrix with
/// formal degree q for both. Up to a q-dependent sign and a positive factor
/// it equals prod_mu (Re E_mu - omega); for q = 1 it is Re c(k) - omega.
double resultant_F(const BlochModel& model, double omega, const Eigen::Vector2d& k);

struct ContourPoint {
    Eigen::Vector2d k;
    double im_e;
    Eigen::Vector2d v;
};

struct Polyline {
    std::vector<ContourPoint> points;
    bool closed = false;
    int band = 0; // order statistic (by Re E) that crosses omega
};

/// Equal-frequency contour {k : Re E_mu(k) = omega for some mu}.
struct Contour {
    double omega = 0;
    int grid_n = 0;
    std::vector<Polyline> polylines;

    std::size_t num_points() const;
    bool empty() const { return polylines.empty(); }
};

/// Marching squares on a periodic grid_n x grid_n Brillouin-zone grid,
/// applied to every order statistic G_j(k) = (j-th smallest Re E) - omega, so
/// crossings of every band are found. Edge crossings are bisected to
/// |Re E - omega| < 1e-10. Polylines that cross the zone boundary are split
/// there; the others are closed.
Contour efc_extract(const BlochModel& model, double omega, int grid_n);

/// A(omega, k) = -Im tr[(omega + i eta - H(k))^-1]; eta > 0.
double spectral_function(const BlochModel& model, double omega, const Eigen::Vector2d& k, double eta);

/// v = -grad_k F / dF/domega with central differences (step 1e-5). Throws
/// NumericalError where |dF/domega| < 1e-12.
Eigen::Vector2d group_velocity(const BlochModel& model, double omega, const Eigen::Vector2d& k);

struct PolylineStats {
    std::size_t points;
    double im_min, im_max, im_mean;
};

struct DdsReport {
    double omega = 0;
    double im_min = 0, im_max = 0, im_spread = 0;
    bool dds_present = false;
    bool empty_contour = false;
    std::vector<PolylineStats> polylines;
};

DdsReport dds_report(const Contour& contour, double tau = 1e-6);
DdsReport dds_report(const BlochModel& model, double omega, int grid_n = 128, double tau = 1e-6);

/// Grid edge between point (i, j) and its +x (horizontal) or +y neighbour,
/// on the periodic grid_n grid.
struct GridEdge {
    int i, j;
    bool horizontal;
    auto operator<=>(const GridEdge&) const = default;
};

/// Edge sets where the resultant and the bands change sign. `band_edges`
/// holds edges crossed by an odd number of bands (the parity that a product
/// of band factors sees); `union_edges` holds edges crossed by any band. A
/// resultant edge without a band crossing is a spurious zero and is reported
/// in `spurious`.
struct EfcCrossCheck {
    std::vector<GridEdge> resultant_edges;
    std::vector<GridEdge> band_edges;
    std::vector<GridEdge> union_edges;
    std::vector<GridEdge> spurious;
};

EfcCrossCheck efc_cross_check(const BlochModel& model, double omega, int grid_n);

/// kx,ky,imE,vx,vy,polyline_id
std::string contour_csv(const Contour& contour);
/// kx,ky,A over an n x n grid
std::string spectral_grid_csv(const BlochModel& model, double omega, double eta, int grid_n);

} // namespace ddsim
