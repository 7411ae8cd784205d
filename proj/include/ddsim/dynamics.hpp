#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ddsim/frame.hpp"
#include "ddsim/geometry.hpp"
#include "ddsim/real_space.hpp"

namespace ddsim {

/// Amplitudes indexed like real_space_operator: site * q + orbital.
struct WaveState {
    const LatticeGeometry* geometry = nullptr;
    int q = 1;
    Eigen::VectorXcd amplitudes;
    double time = 0;

    double norm() const { return amplitudes.norm(); }
    /// sum over orbitals of |psi|^2, one value per site
    Eigen::VectorXd density() const;
};

struct Trajectory {
    std::vector<WaveState> snapshots; // strictly increasing times
    std::optional<std::vector<std::map<int, double>>> weights;
};

/// exp[-(r - r0)^2 / sigma^2 + i k.r] times the spinor on every site,
/// normalized. A warning is pushed when more than 1% of the weight sits on
/// boundary sites.
WaveState gaussian_packet(const LatticeGeometry& geometry, const Eigen::Vector2d& r0, double sigma,
                          const Eigen::Vector2d& k, const Eigen::VectorXcd& spinor,
                          std::vector<std::string>* warnings = nullptr);

/// Largest dt accepted by evolve for this operator.
double max_stable_dt(const SparseMatrixXcd& op);

/// Classic RK4 for d psi/dt = -i H psi, n_steps of size dt. With
/// `renormalize` the state is rescaled to unit norm after every step.
/// Snapshots are taken at the steps nearest the requested times, which must
/// map to distinct steps in [0, n_steps]. Requires dt <= max_stable_dt(op).
/// Throws NumericalError on NaN or norm underflow.
Trajectory evolve(const SparseMatrixXcd& op, const WaveState& state, double dt, int n_steps,
                  const std::vector<double>& snapshot_times, bool renormalize);

/// weight[label] = sum of |psi|^2 over sites with that label, per snapshot.
std::vector<std::map<int, double>> region_weights(const Trajectory& traj, const std::vector<int>& labels);

/// Straight impurity line lambda delta(r_perp = 0) through `origin`.
struct ImpurityLine {
    Eigen::Vector2i direction{0, 1};
    double lambda = 1;
    std::optional<Eigen::Vector2i> origin; // default: lattice centre
};

Eigen::Vector2i line_origin(const LatticeGeometry& geometry, const ImpurityLine& line);
Eigen::VectorXcd impurity_potential(const LatticeGeometry& geometry, const ImpurityLine& line);

enum Region : int { Reflected = -1, Strip = 0, Transmitted = 1 };

/// Labels sites by side of the line, oriented so that `incident_point` lies
/// on the reflected side; sites with |r_perp| <= strip are labelled Strip.
std::vector<int> line_partition(const LatticeGeometry& geometry, const ImpurityLine& line,
                                const Eigen::Vector2d& incident_point, int strip = 3);

/// x,y,density
std::string snapshot_csv(const WaveState& state);

} // namespace ddsim
