#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "ddsim/geometry.hpp"
#include "ddsim/model.hpp"

namespace ddsim {

using SparseMatrixXcd = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

struct RealSpaceOptions {
    /// Wrap hoppings around a square geometry (torus); used for Bloch checks.
    bool periodic = false;
    std::vector<std::string>* warnings = nullptr;
};

/// Tight-binding operator on a finite geometry. Row/column index is
/// site * q + orbital; block (r, r') = t_{r' - r}. Hoppings leaving the site
/// set are dropped. `potential`, when non-empty, holds one complex value per
/// site added on the q x q identity block.
SparseMatrixXcd real_space_operator(const BlochModel& model, const LatticeGeometry& geometry,
                                    const Eigen::VectorXcd& potential = Eigen::VectorXcd(),
                                    const RealSpaceOptions& options = {});

/// Maximum absolute column sum.
double one_norm(const SparseMatrixXcd& h);

} // namespace ddsim
