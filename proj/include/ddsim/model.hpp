#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ddsim/fourier.hpp"
#include "ddsim/model_file.hpp"

namespace ddsim {

/// q x q matrix-valued finite Fourier series H(k) = sum_l t_l exp(i k.l).
/// Immutable once built.
class BlochModel {
public:
    BlochModel(std::string name, int dim, std::vector<FourierSeries> entries);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const FourierSeries& entry(int row, int col) const { return entries_[row * dim_ + col]; }

    /// Common hopping-range bound M over all entries.
    int max_range() const { return max_range_; }

    /// All displacements carrying a nonzero amplitude in some entry.
    std::vector<Displacement> displacements() const;

    /// Hopping block t_l (q x q).
    Eigen::MatrixXcd hopping(Displacement l) const;

private:
    std::string name_;
    int dim_;
    std::vector<FourierSeries> entries_;
    int max_range_ = 0;
};

BlochModel build_model(const ModelSpec& spec);

/// Built-in models: "gdse2band", "fig2", "fig4", "sm-singleband". Overrides
/// replace default parameter values; unknown names throw InputError.
std::vector<std::string> builtin_names();
ModelSpec builtin_spec(std::string_view name, const ParamMap& overrides = {});
BlochModel builtin_model(std::string_view name, const ParamMap& overrides = {});

Eigen::MatrixXcd bloch_matrix(const BlochModel& model, const Eigen::Vector2d& k);

/// Eigenvalues at one momentum, sorted lexicographically by (Re E, Im E).
/// This is a storage convention only; no band continuity across k.
struct BandSet {
    static constexpr const char* ordering = "re-im-lexicographic";
    Eigen::Vector2d k;
    Eigen::VectorXcd energies;
};

BandSet bands(const BlochModel& model, const Eigen::Vector2d& k);

/// Sorted eigenvalues of a small dense matrix (throws NumericalError on
/// solver failure).
Eigen::VectorXcd sorted_eigenvalues(const Eigen::MatrixXcd& h);

enum class MomentumMap { Mx, My, Mdiag, Manti, Reciprocity };

/// Mx: (kx,ky)->(-kx,ky), My: (kx,-ky), Mdiag: (ky,kx), Manti: (-ky,-kx),
/// Reciprocity: -k.
Eigen::Vector2d apply(MomentumMap map, const Eigen::Vector2d& k);
std::string_view to_string(MomentumMap map);
MomentumMap parse_momentum_map(std::string_view name);

/// Hausdorff distance between two eigenvalue multisets.
double hausdorff_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// True iff the eigenvalue multiset at map(k) matches the one at k (Hausdorff
/// distance <= tol) on every point of a grid_n x grid_n Brillouin-zone grid.
bool band_symmetry_holds(const BlochModel& model, MomentumMap map, int grid_n, double tol);
/// Same for an arbitrary momentum map (e.g. a composition).
bool band_symmetry_holds(const BlochModel& model, const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& map,
                         int grid_n, double tol);

/// H(k) Hermitian for all k: H_ba == conj-reversed(H_ab) for every pair.
bool is_hermitian(const BlochModel& model, double tol = 1e-12);

/// n-point Brillouin-zone grid coordinate -pi + 2 pi j / n.
double bz_coordinate(int j, int n);

} // namespace ddsim
