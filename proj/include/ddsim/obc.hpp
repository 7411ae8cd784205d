#pragma once

#include <string>

#include <Eigen/Core>

#include "ddsim/geometry.hpp"
#include "ddsim/model.hpp"
#include "ddsim/real_space.hpp"

namespace ddsim {

/// Open-boundary eigenpairs; column i of `vectors` is the unit-norm right
/// eigenvector of values(i). Ordered by (Re E, Im E).
struct Spectrum {
    const LatticeGeometry* geometry = nullptr;
    int q = 1;
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;
    double max_residual = 0; // max_i ||H v_i - E_i v_i|| / ||H||_1
};

struct ObcOptions {
    int max_dim = 8000;
    Eigen::VectorXcd potential; // optional on-site term, one value per site
};

/// Dense non-symmetric eigendecomposition of the real-space operator.
/// Throws InputError above the size cap and NumericalError if the solver
/// fails or a residual exceeds 1e-8 ||H||_1.
Spectrum obc_spectrum(const BlochModel& model, const LatticeGeometry& geometry, const ObcOptions& options = {});

/// P(r) = sum over states with |Re E - omega| < delta of sum_alpha |psi_alpha(r)|^2.
struct DensityField {
    double omega = 0;
    double delta = 0;
    int n_states = 0;
    Eigen::VectorXd values; // per site
};

/// Throws InputError when the window holds no eigenvalue (the message names
/// the nearest Re E).
DensityField frequency_density(const Spectrum& spectrum, double omega, double delta);

struct LocalizationMetrics {
    int edge_width = 0;
    double edge_fraction = 0; // weight on sites less than edge_width steps from the boundary
    double baseline = 0;      // the same for a uniform field (site-count ratio)
    double ipr = 0;           // sum p_r^2, p = P / sum P
};

LocalizationMetrics localization_metrics(const DensityField& field, const LatticeGeometry& geometry,
                                         int edge_width = 3);

/// Left/right pairing: left eigenvectors from the adjoint problem matched to
/// the right ones by eigenvalue. S = L^H R with unit-norm columns; a normal
/// operator gives S = I. `condition` is ||S^-1||_2, which also bounds the
/// eigenvalue condition numbers 1 / |l_i^H r_i| from below.
struct BiorthogonalityReport {
    double condition = 0;
    double max_offdiagonal = 0; // largest |<l_i, r_j>| / |<l_i, r_i>|, i != j
    bool flagged = false;       // condition > 1e8 (near an exceptional point or strongly non-normal)
};

BiorthogonalityReport biorthogonality_check(const BlochModel& model, const Spectrum& spectrum,
                                            const ObcOptions& options = {});

/// index,reE,imE
std::string spectrum_csv(const Spectrum& spectrum);
/// x,y,P
std::string density_csv(const DensityField& field, const LatticeGeometry& geometry);
/// key=value summary line
std::string metrics_summary(const DensityField& field, const LocalizationMetrics& metrics);

} // namespace ddsim
