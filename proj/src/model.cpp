#include "ddsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ddsim/error.hpp"

namespace ddsim {

BlochModel::BlochModel(std::string name, int dim, std::vector<FourierSeries> entries)
    : name_(std::move(name)), dim_(dim), entries_(std::move(entries)) {
    if (dim_ < 1 || static_cast<int>(entries_.size()) != dim_ * dim_)
        throw std::invalid_argument("BlochModel: entry count does not match dimension");
    for (const auto& e : entries_) max_range_ = std::max(max_range_, e.max_range());
}

std::vector<Displacement> BlochModel::displacements() const {
    std::set<Displacement> all;
    for (const auto& e : entries_)
        for (const auto& [l, c] : e.terms()) all.insert(l);
    return {all.begin(), all.end()};
}

Eigen::MatrixXcd BlochModel::hopping(Displacement l) const {
    Eigen::MatrixXcd t(dim_, dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) t(r, c) = entry(r, c).coeff(l);
    return t;
}

BlochModel build_model(const ModelSpec& spec) {
    std::vector<FourierSeries> entries;
    entries.reserve(spec.entries.size());
    for (int r = 0; r < spec.dim; ++r) {
        for (int c = 0; c < spec.dim; ++c) {
            try {
                entries.push_back(lower_expression(spec.entry(r, c), spec.params));
            } catch (const ExpressionError& e) {
                throw InputError("H" + std::to_string(r + 1) + std::to_string(c + 1) + ": " + e.what());
            }
        }
    }
    return BlochModel(spec.name, spec.dim, std::move(entries));
}

namespace {

struct Builtin {
    const char* name;
    int dim;
    ParamMap params;
    std::vector<std::string> entries;
};

const std::vector<Builtin>& builtins() {
    static const std::vector<Builtin> table = [] {
        const std::string d0 = "(mu0 + t0*(cos(kx) + cos(ky)))";
        const std::string dx = "(t*(1 - cos(kx) - cos(ky) + cos(kx - ky)))";
        const std::string dy = "(t*(sin(kx) - sin(ky) - sin(kx - ky)))";
        const std::string dz = "(muz + tz*(cos(kx) - cos(ky)))";
        return std::vector<Builtin>{
            // sum_i d_i sigma_i - (i gamma / 2)(sigma_0 - sigma_z)
            {"gdse2band",
             2,
             {{"mu0", 1.35}, {"muz", -0.05}, {"t0", -0.4}, {"t", 0.4}, {"tz", -0.6}, {"gamma", 1.0}},
             {d0 + " + " + dz, dx + " - i*" + dy, dx + " + i*" + dy, d0 + " - " + dz + " - i*gamma"}},
            {"fig2", 1, {}, {"2*sin(kx)*cos(ky) - 2*cos(kx) + i*(cos(kx) - 1)"}},
            {"fig4", 1, {}, {"cos(kx) + cos(ky) + i*((1/2 - cos(kx) - cos(ky))*cos(kx))"}},
            {"sm-singleband", 1, {{"g", 1.0}}, {"-2*(cos(kx) + cos(ky)) + i*g*(cos(ky) - 1)"}},
        };
    }();
    return table;
}

} // namespace

std::vector<std::string> builtin_names() {
    std::vector<std::string> names;
    for (const auto& b : builtins()) names.emplace_back(b.name);
    return names;
}

ModelSpec builtin_spec(std::string_view name, const ParamMap& overrides) {
    for (const auto& b : builtins()) {
        if (name != b.name) continue;
        ModelSpec spec{b.name, b.dim, b.params, b.entries};
        for (const auto& [k, v] : overrides) {
            auto it = spec.params.find(k);
            if (it == spec.params.end())
                throw InputError("model '" + std::string(name) + "' has no parameter '" + k + "'");
            it->second = v;
        }
        return spec;
    }
    throw InputError("unknown built-in model '" + std::string(name) + "'");
}

BlochModel builtin_model(std::string_view name, const ParamMap& overrides) {
    return build_model(builtin_spec(name, overrides));
}

Eigen::MatrixXcd bloch_matrix(const BlochModel& model, const Eigen::Vector2d& k) {
    const int q = model.dim();
    Eigen::MatrixXcd h(q, q);
    for (int r = 0; r < q; ++r)
        for (int c = 0; c < q; ++c) h(r, c) = model.entry(r, c)(k);
    return h;
}

Eigen::VectorXcd sorted_eigenvalues(const Eigen::MatrixXcd& h) {
    Eigen::VectorXcd ev;
    if (h.rows() == 1) {
        ev = h.diagonal();
    } else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h, false);
        if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
        ev = solver.eigenvalues();
    }
    std::sort(ev.data(), ev.data() + ev.size(), [](const auto& a, const auto& b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    return ev;
}

BandSet bands(const BlochModel& model, const Eigen::Vector2d& k) {
    return {k, sorted_eigenvalues(bloch_matrix(model, k))};
}

Eigen::Vector2d apply(MomentumMap map, const Eigen::Vector2d& k) {
    switch (map) {
    case MomentumMap::Mx: return {-k.x(), k.y()};
    case MomentumMap::My: return {k.x(), -k.y()};
    case MomentumMap::Mdiag: return {k.y(), k.x()};
    case MomentumMap::Manti: return {-k.y(), -k.x()};
    case MomentumMap::Reciprocity: return -k;
    }
    return k;
}

std::string_view to_string(MomentumMap map) {
    switch (map) {
    case MomentumMap::Mx: return "Mx";
    case MomentumMap::My: return "My";
    case MomentumMap::Mdiag: return "Mdiag";
    case MomentumMap::Manti: return "Manti";
    case MomentumMap::Reciprocity: return "reciprocity";
    }
    return "?";
}

MomentumMap parse_momentum_map(std::string_view name) {
    for (auto m : {MomentumMap::Mx, MomentumMap::My, MomentumMap::Mdiag, MomentumMap::Manti,
                   MomentumMap::Reciprocity})
        if (name == to_string(m)) return m;
    throw InputError("unknown symmetry '" + std::string(name) + "'");
}

double hausdorff_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    auto directed = [](const Eigen::VectorXcd& from, const Eigen::VectorXcd& to) {
        double worst = 0.0;
        for (Eigen::Index i = 0; i < from.size(); ++i)
            worst = std::max(worst, (to.array() - from(i)).abs().minCoeff());
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double bz_coordinate(int j, int n) { return -std::numbers::pi + 2.0 * std::numbers::pi * j / n; }

bool band_symmetry_holds(const BlochModel& model, MomentumMap map, int grid_n, double tol) {
    return band_symmetry_holds(model, [map](const Eigen::Vector2d& k) { return apply(map, k); }, grid_n, tol);
}

bool band_symmetry_holds(const BlochModel& model, const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& map,
                         int grid_n, double tol) {
    if (grid_n < 8) throw std::invalid_argument("band_symmetry_holds: grid_n must be >= 8");
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const Eigen::Vector2d k(bz_coordinate(i, grid_n), bz_coordinate(j, grid_n));
            const auto e0 = sorted_eigenvalues(bloch_matrix(model, k));
            const auto e1 = sorted_eigenvalues(bloch_matrix(model, map(k)));
            if (hausdorff_distance(e0, e1) > tol) return false;
        }
    }
    return true;
}

bool is_hermitian(const BlochModel& model, double tol) {
    const int q = model.dim();
    for (int r = 0; r < q; ++r)
        for (int c = r; c < q; ++c)
            if (!model.entry(c, r).approx_equal(model.entry(r, c).conj_reversed(), tol)) return false;
    return true;
}

} // namespace ddsim
