#include "ddsim/dynamics.hpp"

#include <cmath>

#include "ddsim/csv.hpp"
#include "ddsim/error.hpp"

namespace ddsim {

namespace {
constexpr double kStability = 0.4; // dt * ||H||_1
constexpr double kUnderflow = 1e-250;
} // namespace

Eigen::VectorXd WaveState::density() const {
    const int n = static_cast<int>(amplitudes.size()) / q;
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = amplitudes.segment(i * q, q).squaredNorm();
    return d;
}

WaveState gaussian_packet(const LatticeGeometry& geometry, const Eigen::Vector2d& r0, double sigma,
                          const Eigen::Vector2d& k, const Eigen::VectorXcd& spinor,
                          std::vector<std::string>* warnings) {
    if (!(sigma > 0)) throw InputError("gaussian_packet: sigma must be positive");
    if (spinor.size() < 1) throw InputError("gaussian_packet: empty spinor");
    const auto inside = geometry.index_of(static_cast<int>(std::lround(r0.x())), static_cast<int>(std::lround(r0.y())));
    if (!inside) throw InputError("gaussian_packet: centre lies outside the geometry");

    const int q = static_cast<int>(spinor.size());
    WaveState s{&geometry, q, Eigen::VectorXcd::Zero(geometry.num_sites() * q), 0.0};
    for (int i = 0; i < geometry.num_sites(); ++i) {
        const Eigen::Vector2d r = geometry.site(i).cast<double>();
        const double env = std::exp(-(r - r0).squaredNorm() / (sigma * sigma));
        s.amplitudes.segment(i * q, q) = std::polar(env, k.dot(r)) * spinor;
    }
    const double norm = s.norm();
    if (!(norm > 0)) throw NumericalError("gaussian_packet: packet has zero weight on the lattice");
    s.amplitudes /= norm;

    if (warnings) {
        const Eigen::VectorXd d = s.density();
        double edge = 0;
        for (int i : geometry.boundary()) edge += d(i);
        if (edge > 0.01)
            warnings->push_back("packet has " + format_double(edge) + " of its weight on boundary sites");
    }
    return s;
}

double max_stable_dt(const SparseMatrixXcd& op) {
    const double h = one_norm(op);
    return h > 0 ? kStability / h : INFINITY;
}

Trajectory evolve(const SparseMatrixXcd& op, const WaveState& state, double dt, int n_steps,
                  const std::vector<double>& snapshot_times, bool renormalize) {
    if (op.rows() != state.amplitudes.size()) throw InputError("evolve: state size does not match the operator");
    if (!(dt > 0) || n_steps < 0) throw InputError("evolve: need dt > 0 and n_steps >= 0");
    if (dt > max_stable_dt(op) * (1 + 1e-12))
        throw InputError("evolve: dt = " + format_double(dt) + " exceeds the stability bound " +
                         format_double(max_stable_dt(op)) + " (0.4 / ||H||_1)");

    std::vector<int> at;
    for (double t : snapshot_times) {
        const long step = std::lround((t - state.time) / dt);
        if (step < 0 || step > n_steps)
            throw InputError("evolve: snapshot time " + format_double(t) + " is outside the run");
        if (!at.empty() && step <= at.back())
            throw InputError("evolve: snapshot times must map to strictly increasing steps");
        at.push_back(static_cast<int>(step));
    }

    Trajectory traj;
    const std::complex<double> mi(0, -1);
    Eigen::VectorXcd psi = state.amplitudes, k1, k2, k3, k4, tmp;
    std::size_t next = 0;
    auto capture = [&](int step) {
        while (next < at.size() && at[next] == step) {
            traj.snapshots.push_back({state.geometry, state.q, psi, state.time + step * dt});
            ++next;
        }
    };
    capture(0);
    for (int step = 1; step <= n_steps && next < at.size(); ++step) {
        k1 = mi * (op * psi);
        tmp = psi + (dt / 2) * k1;
        k2 = mi * (op * tmp);
        tmp = psi + (dt / 2) * k2;
        k3 = mi * (op * tmp);
        tmp = psi + dt * k3;
        k4 = mi * (op * tmp);
        psi += (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double norm = psi.norm();
        if (!std::isfinite(norm))
            throw NumericalError("evolve: non-finite amplitudes at t = " + format_double(state.time + step * dt));
        if (norm < kUnderflow)
            throw NumericalError("evolve: norm underflow (" + format_double(norm) + ") at t = " +
                                 format_double(state.time + step * dt) + "; the state was absorbed");
        if (renormalize) psi /= norm;
        capture(step);
    }
    return traj;
}

std::vector<std::map<int, double>> region_weights(const Trajectory& traj, const std::vector<int>& labels) {
    std::vector<std::map<int, double>> out;
    for (const WaveState& s : traj.snapshots) {
        const Eigen::VectorXd d = s.density();
        if (static_cast<std::size_t>(d.size()) != labels.size())
            throw InputError("region_weights: one label per site required");
        const double total = d.sum();
        std::map<int, double> w;
        for (std::size_t i = 0; i < labels.size(); ++i) w[labels[i]] += d(i) / total;
        out.push_back(std::move(w));
    }
    return out;
}

Eigen::Vector2i line_origin(const LatticeGeometry& geometry, const ImpurityLine& line) {
    if (line.origin) return *line.origin;
    Eigen::Vector2i lo = geometry.site(0), hi = geometry.site(0);
    for (const auto& s : geometry.sites()) {
        lo = lo.cwiseMin(s);
        hi = hi.cwiseMax(s);
    }
    return (lo + hi + Eigen::Vector2i::Ones()) / 2;
}

Eigen::VectorXcd impurity_potential(const LatticeGeometry& geometry, const ImpurityLine& line) {
    const LatticeFrame f = line_frame(line.direction);
    const Eigen::Vector2i o = line_origin(geometry, line);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(geometry.num_sites());
    for (int i = 0; i < geometry.num_sites(); ++i)
        if (f.r_perp(geometry.site(i) - o) == 0) v(i) = line.lambda;
    return v;
}

std::vector<int> line_partition(const LatticeGeometry& geometry, const ImpurityLine& line,
                                const Eigen::Vector2d& incident_point, int strip) {
    const LatticeFrame f = line_frame(line.direction);
    const Eigen::Vector2i o = line_origin(geometry, line);
    const double side = f.dual_perp().cast<double>().dot(incident_point - o.cast<double>());
    if (side == 0) throw InputError("line_partition: incident point lies on the line");
    const int sign = side < 0 ? 1 : -1; // oriented r_perp is negative on the incident side
    std::vector<int> labels(geometry.num_sites());
    for (int i = 0; i < geometry.num_sites(); ++i) {
        const int rp = sign * f.r_perp(geometry.site(i) - o);
        labels[i] = std::abs(rp) <= strip ? Strip : rp < 0 ? Reflected : Transmitted;
    }
    return labels;
}

std::string snapshot_csv(const WaveState& state) {
    std::string out = "x,y,density\n";
    const Eigen::VectorXd d = state.density();
    for (int i = 0; i < d.size(); ++i) {
        const auto& r = state.geometry->site(i);
        out += csv_row({r.x(), r.y(), d(i)});
    }
    return out;
}

} // namespace ddsim
