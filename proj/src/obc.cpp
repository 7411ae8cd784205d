#include "ddsim/obc.hpp"

#include <algorithm>
#include <complex>
#include <numeric>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Dense>

#include "ddsim/csv.hpp"
#include "ddsim/error.hpp"

namespace ddsim {

namespace {

Eigen::MatrixXcd dense_operator(const BlochModel& model, const LatticeGeometry& geometry, const ObcOptions& options) {
    const long dim = static_cast<long>(geometry.num_sites()) * model.dim();
    if (dim > options.max_dim)
        throw InputError("obc: dimension " + std::to_string(dim) + " exceeds the dense-solver cap " +
                         std::to_string(options.max_dim));
    return Eigen::MatrixXcd(real_space_operator(model, geometry, options.potential));
}

struct Eigenpairs {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd left, right;
};

// zgeev; `a` is overwritten.
Eigenpairs geev(Eigen::MatrixXcd a, bool want_left) {
    const int n = static_cast<int>(a.rows());
    Eigenpairs e{Eigen::VectorXcd(n), Eigen::MatrixXcd(want_left ? n : 1, n), Eigen::MatrixXcd(n, n)};
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, want_left ? 'V' : 'N', 'V', n, a.data(), n, e.values.data(), e.left.data(),
                      static_cast<int>(e.left.rows()), e.right.data(), n);
    if (info != 0) throw NumericalError("obc: eigensolver failed (zgeev info " + std::to_string(info) + ")");
    return e;
}

std::vector<int> spectral_order(const Eigen::VectorXcd& e) {
    std::vector<int> order(e.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(e(a).real(), e(a).imag()) < std::pair(e(b).real(), e(b).imag());
    });
    return order;
}

} // namespace

Spectrum obc_spectrum(const BlochModel& model, const LatticeGeometry& geometry, const ObcOptions& options) {
    const Eigen::MatrixXcd h = dense_operator(model, geometry, options);
    const Eigenpairs ep = geev(h, false);
    const Eigen::VectorXcd& e = ep.values;
    const std::vector<int> order = spectral_order(e);

    Spectrum s{&geometry, model.dim(), Eigen::VectorXcd(e.size()), Eigen::MatrixXcd(h.rows(), h.cols()), 0.0};
    for (int i = 0; i < e.size(); ++i) {
        s.values(i) = e(order[i]);
        s.vectors.col(i) = ep.right.col(order[i]).normalized();
    }

    const double scale = std::max(h.cwiseAbs().colwise().sum().maxCoeff(), 1e-300);
    const Eigen::MatrixXcd r = h * s.vectors - s.vectors * s.values.asDiagonal();
    s.max_residual = r.colwise().norm().maxCoeff() / scale;
    if (s.max_residual > 1e-8)
        throw NumericalError("obc: eigenpair residual " + format_double(s.max_residual) + " exceeds 1e-8 ||H||");
    return s;
}

DensityField frequency_density(const Spectrum& spectrum, double omega, double delta) {
    if (!(delta > 0)) throw InputError("frequency_density: window must be positive");
    const int q = spectrum.q;
    const int n_sites = static_cast<int>(spectrum.vectors.rows()) / q;
    DensityField f{omega, delta, 0, Eigen::VectorXd::Zero(n_sites)};
    int nearest = -1;
    for (int i = 0; i < spectrum.values.size(); ++i) {
        const double gap = std::abs(spectrum.values(i).real() - omega);
        if (nearest < 0 || gap < std::abs(spectrum.values(nearest).real() - omega)) nearest = i;
        if (gap >= delta) continue;
        ++f.n_states;
        for (int r = 0; r < n_sites; ++r) f.values(r) += spectrum.vectors.col(i).segment(r * q, q).squaredNorm();
    }
    if (f.n_states == 0)
        throw InputError("frequency_density: no eigenvalue with |Re E - " + format_double(omega) + "| < " +
                         format_double(delta) + "; nearest Re E is " +
                         (nearest < 0 ? std::string("none") : format_double(spectrum.values(nearest).real())));
    return f;
}

LocalizationMetrics localization_metrics(const DensityField& field, const LatticeGeometry& geometry, int edge_width) {
    if (edge_width < 1) throw InputError("localization_metrics: edge width must be >= 1");
    if (field.values.size() != geometry.num_sites()) throw InputError("localization_metrics: field/geometry mismatch");
    const auto& dist = geometry.boundary_distance();
    LocalizationMetrics m;
    m.edge_width = edge_width;
    const double total = field.values.sum();
    int edge_sites = 0;
    for (int i = 0; i < geometry.num_sites(); ++i) {
        if (dist[i] >= edge_width) continue;
        ++edge_sites;
        m.edge_fraction += field.values(i);
    }
    m.edge_fraction /= total;
    m.baseline = static_cast<double>(edge_sites) / geometry.num_sites();
    m.ipr = (field.values / total).squaredNorm();
    return m;
}

BiorthogonalityReport biorthogonality_check(const BlochModel& model, const Spectrum& spectrum,
                                            const ObcOptions& options) {
    // u^H H = E u^H, i.e. u is an eigenvector of the adjoint problem
    const Eigenpairs ep = geev(dense_operator(model, *spectrum.geometry, options), true);
    const int n = static_cast<int>(ep.values.size());
    if (n != spectrum.values.size()) throw InputError("biorthogonality_check: spectrum does not match the model");
    const std::vector<int> order = spectral_order(ep.values);
    Eigen::MatrixXcd left(n, n), right(n, n);
    for (int i = 0; i < n; ++i) {
        left.col(i) = ep.left.col(order[i]).normalized();
        right.col(i) = ep.right.col(order[i]).normalized();
    }

    const Eigen::MatrixXcd s = left.adjoint() * right;
    BiorthogonalityReport rep;
    const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXcd>(s).singularValues();
    rep.condition = sv(sv.size() - 1) > 0 ? 1 / sv(sv.size() - 1) : INFINITY;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) rep.max_offdiagonal = std::max(rep.max_offdiagonal, std::abs(s(i, j)) / std::abs(s(i, i)));
    rep.flagged = !(rep.condition <= 1e8);
    return rep;
}

std::string spectrum_csv(const Spectrum& spectrum) {
    std::string out = "index,reE,imE\n";
    for (int i = 0; i < spectrum.values.size(); ++i)
        out += csv_row({i, spectrum.values(i).real(), spectrum.values(i).imag()});
    return out;
}

std::string density_csv(const DensityField& field, const LatticeGeometry& geometry) {
    std::string out = "x,y,P\n";
    for (int i = 0; i < geometry.num_sites(); ++i)
        out += csv_row({geometry.site(i).x(), geometry.site(i).y(), field.values(i)});
    return out;
}

std::string metrics_summary(const DensityField& field, const LocalizationMetrics& m) {
    return "omega=" + format_double(field.omega) + " delta=" + format_double(field.delta) +
           " n_states=" + std::to_string(field.n_states) + " edge_width=" + std::to_string(m.edge_width) +
           " edge_fraction=" + format_double(m.edge_fraction) + " baseline=" + format_double(m.baseline) +
           " ipr=" + format_double(m.ipr) + "\n";
}

} // namespace ddsim
