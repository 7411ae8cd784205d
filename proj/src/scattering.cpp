#include "ddsim/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ddsim/csv.hpp"
#include "ddsim/efc.hpp"
#include "ddsim/error.hpp"

namespace ddsim {

using cd = std::complex<double>;
using std::numbers::pi;

namespace {

constexpr cd two_pi_i(0, 2 * pi);

double wrap(double x) { return x - 2 * pi * std::floor((x + pi) / (2 * pi)); }

std::string fmt_c(cd z) { return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i"; }

} // namespace

CLaurent BoundaryPoly::cleared() const { return CLaurent(0, laurent.coeffs()); }

std::vector<CLaurent> line_hamiltonian(const BlochModel& model, const LatticeFrame& frame, double k_theta) {
    const int q = model.dim();
    const Eigen::Vector2i theta = frame.dual_theta();
    const Eigen::Vector2i perp = frame.dual_perp();
    std::vector<CLaurent> h(q * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (const auto& [l, c] : model.entry(a, b).terms()) {
                const int power = perp.x() * l.x + perp.y() * l.y;
                const double phase = k_theta * (theta.x() * l.x + theta.y() * l.y);
                h[a * q + b] += CLaurent::monomial(power, c * std::polar(1.0, phase));
            }
    return h;
}

BoundaryPoly boundary_polynomial(const BlochModel& model, const LatticeFrame& frame, double k_theta, cd energy,
                                 double eta) {
    const int q = model.dim();
    std::vector<CLaurent> m = line_hamiltonian(model, frame, k_theta);
    for (auto& e : m) e *= -1.0;
    for (int a = 0; a < q; ++a) m[a * q + a] += CLaurent::constant(energy + cd(0, eta));
    CLaurent g = determinant(m, q);
    double scale = 0;
    for (Eigen::Index j = 0; j < g.coeffs().size(); ++j) scale = std::max(scale, std::abs(g.coeffs()(j)));
    g.trim(1e-14 * std::max(scale, 1.0));
    if (g.is_zero())
        throw NumericalError("boundary polynomial vanishes identically (energy equals a flat band along the line)");
    BoundaryPoly bp;
    bp.energy = energy;
    bp.eta = eta;
    bp.k_theta = k_theta;
    bp.m = -g.low();
    bp.n = g.high();
    bp.laurent = std::move(g);
    return bp;
}

std::string_view to_string(Classification c) {
    return c == Classification::Conventional ? "Conventional" : "Anomalous";
}

ScatterReport pole_partition(const BoundaryPoly& bp) {
    const CLaurent p = bp.cleared();
    if (p.high() < 1) throw NumericalError("pole_partition: boundary polynomial has no roots");
    const CLaurent dp = p.derivative();
    const std::vector<cd> roots = companion_roots(p);

    for (std::size_t a = 0; a < roots.size(); ++a)
        for (std::size_t b = a + 1; b < roots.size(); ++b)
            if (std::abs(roots[a] - roots[b]) < 1e-9 * std::max(1.0, std::abs(roots[a])))
                throw NumericalError("pole_partition: multiple root near " + fmt_c(roots[a]) + "; perturb eta");

    ScatterReport r;
    r.m = bp.m;
    r.n = bp.n;
    for (const cd& z : roots) {
        const cd c = two_pi_i * std::pow(z, bp.m - 1) / dp(z);
        const Pole pole{z, std::abs(z), c};
        if (std::abs(pole.modulus - 1.0) < 1e-9) r.on_circle = true;
        (pole.modulus < 1.0 ? r.poles_in : r.poles_out).push_back(pole);
    }
    std::sort(r.poles_in.begin(), r.poles_in.end(), [](const Pole& a, const Pole& b) { return a.modulus > b.modulus; });
    std::sort(r.poles_out.begin(), r.poles_out.end(), [](const Pole& a, const Pole& b) { return a.modulus < b.modulus; });
    // zeros of g at the origin (m < 0) count as inside roots
    r.winding = static_cast<int>(r.poles_in.size()) + std::max(0, -bp.m) - std::max(0, bp.m);
    return r;
}

double winding_by_argument(const BoundaryPoly& bp, int samples) {
    double total = 0;
    cd prev = bp.laurent(cd(1, 0));
    for (int j = 1; j <= samples; ++j) {
        const cd cur = bp.laurent(std::polar(1.0, 2 * pi * j / samples));
        total += std::arg(cur / prev);
        prev = cur;
    }
    return total / (2 * pi);
}

int winding_number(const BoundaryPoly& bp) {
    const ScatterReport r = pole_partition(bp);
    if (r.on_circle) throw NumericalError("winding_number: root on the unit circle");
    const double arg = winding_by_argument(bp);
    const long rounded = std::lround(arg);
    if (std::abs(arg - rounded) > 0.25 || rounded != r.winding)
        throw NumericalError("winding_number: argument principle gives " + format_double(arg) +
                             " but root count gives " + std::to_string(r.winding));
    return r.winding;
}

ScatterReport classify_scattering(const BlochModel& model, const Eigen::Vector2d& k_incident,
                                  const Eigen::Vector2i& direction, const ClassifyOptions& options) {
    const auto& schedule = options.eta_schedule;
    if (schedule.size() < 2) throw InputError("eta schedule needs at least two values");
    for (double e : schedule)
        if (!(e > 0)) throw InputError("eta values must be positive");

    std::vector<std::string> warnings;
    const Eigen::VectorXcd energies = bands(model, k_incident).energies;
    Eigen::Index band = 0;
    if (options.omega) {
        (energies.real().array() - *options.omega).abs().minCoeff(&band);
        if (std::abs(energies(band).real() - *options.omega) > 1e-6)
            warnings.push_back("k_i is not on the EFC of omega = " + format_double(*options.omega));
    } else {
        energies.imag().maxCoeff(&band);
    }
    const cd e0 = energies(band);

    LatticeFrame frame = line_frame(direction);
    const Eigen::Vector2d v = group_velocity(model, e0.real(), k_incident);
    const double v_perp = v.dot(frame.dual_perp().cast<double>());
    bool flipped = false;
    if (v_perp < 0) {
        frame = frame.flipped();
        flipped = true;
    }
    if (std::abs(v_perp) < 1e-6 * std::max(1.0, v.norm()))
        warnings.push_back("incident velocity is (nearly) parallel to the line");
    const double k_theta = frame.k_theta(k_incident);

    ScatterReport last;
    std::vector<EtaStep> steps;
    std::vector<double> ln_in, ln_out;
    for (double eta : schedule) {
        const BoundaryPoly bp = boundary_polynomial(model, frame, k_theta, e0, eta);
        last = pole_partition(bp);
        if (last.poles_in.empty()) throw NumericalError("classify_scattering: no pole inside |z| = 1");
        const double in_max = last.poles_in.front().modulus;
        const double out_min = last.poles_out.empty() ? INFINITY : last.poles_out.front().modulus;
        steps.push_back({eta, in_max, out_min, winding_number(bp)});
        ln_in.push_back(std::log(in_max));
        ln_out.push_back(std::log(out_min));
    }

    auto extrapolate = [&](const std::vector<double>& y) -> double {
        const std::size_t b = y.size() - 1, a = b - 1;
        if (!std::isfinite(y[a]) || !std::isfinite(y[b])) return INFINITY;
        return y[b] - schedule[b] * (y[a] - y[b]) / (schedule[a] - schedule[b]);
    };

    ScatterReport r = std::move(last);
    r.schedule = std::move(steps);
    r.frame = frame;
    r.frame_flipped = flipped;
    r.k_incident = k_incident;
    r.energy = e0;
    r.k_theta = k_theta;
    r.velocity = v;
    r.warnings = std::move(warnings);
    r.kappa_in = extrapolate(ln_in);
    if (std::abs(r.kappa_in) > options.kappa_threshold)
        throw NumericalError("classify_scattering: no inside pole approaches |z| = 1 (extrapolated ln|z_in| = " +
                             format_double(r.kappa_in) + "); check the incident direction");
    const double kappa0 = extrapolate(ln_out);
    r.dominant_in = r.poles_in.front().z;
    if (!r.poles_out.empty()) r.dominant_out = r.poles_out.front().z;
    if (kappa0 < options.kappa_threshold) {
        r.classification = Classification::Conventional;
        r.kappa = 0;
        const double kp = std::arg(r.dominant_out);
        const Eigen::Vector2d partner = frame.momentum(k_theta, kp);
        r.partner = Eigen::Vector2d(wrap(partner.x()), wrap(partner.y()));
    } else {
        r.classification = Classification::Anomalous;
        r.kappa = kappa0;
    }

    // least-squares line through (eta, |z_out^min| - 1)
    if (std::isfinite(kappa0)) {
        const std::size_t n = schedule.size();
        Eigen::MatrixXd a(n, 2);
        Eigen::VectorXd y(n);
        for (std::size_t s = 0; s < n; ++s) {
            a(s, 0) = 1;
            a(s, 1) = schedule[s];
            y(s) = r.schedule[s].out_min - 1;
        }
        const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
        r.linearity_residual = (a * coef - y).norm() / y.norm();
    }
    return r;
}

std::complex<double> line_green(const ScatterReport& poles, int r_perp) {
    cd sum = 0;
    if (r_perp >= std::max(0, 1 - poles.m)) {
        for (const Pole& p : poles.poles_in) sum += p.residue * std::pow(p.z, r_perp);
    } else if (r_perp <= std::min(0, poles.n - 1)) {
        for (const Pole& p : poles.poles_out) sum -= p.residue * std::pow(p.z, r_perp);
    } else {
        throw NumericalError("line_green: r_perp = 0 needs a pole at the origin or at infinity");
    }
    return sum / two_pi_i;
}

ScatteredProfile scattered_profile(const BlochModel& model, const Eigen::Vector2d& k_incident,
                                   const Eigen::Vector2i& direction, double lambda, int r_min, int r_max,
                                   const ClassifyOptions& options) {
    if (model.dim() != 1) throw InputError("scattered profiles are available for single-band models only");
    if (r_min > r_max) throw InputError("profile range is empty");
    ScatteredProfile out;
    out.report = classify_scattering(model, k_incident, direction, options);
    out.eta = options.eta_schedule.back();
    out.g0 = line_green(out.report, 0);
    const cd denom = 1.0 - lambda * out.g0;
    if (std::abs(denom) < 1e-8) throw NumericalError("scattered_profile: impurity bound-state resonance");
    out.psi0 = 1.0 / denom;
    for (int r = r_min; r <= r_max; ++r) out.points.push_back({r, lambda * out.psi0 * line_green(out.report, r)});
    return out;
}

std::vector<ProtectedDirection> symmetry_protected_directions(const BlochModel& model, int grid_n, double tol) {
    struct Mirror {
        MomentumMap map;
        Eigen::Vector2i line;
    };
    const Mirror mirrors[] = {{MomentumMap::Mx, {0, 1}},
                              {MomentumMap::My, {1, 0}},
                              {MomentumMap::Mdiag, {1, 1}},
                              {MomentumMap::Manti, {-1, 1}}};
    std::vector<ProtectedDirection> out;
    auto emit = [&](Eigen::Vector2i d, std::string tag) {
        if (d.y() < 0 || (d.y() == 0 && d.x() < 0)) d = -d;
        for (const auto& e : out)
            if (e.direction == d || e.direction == -d) return;
        out.push_back({d, std::move(tag)});
    };
    for (const Mirror& m : mirrors) {
        if (band_symmetry_holds(model, m.map, grid_n, tol)) emit(m.line, std::string(to_string(m.map)));
        const auto composite = [&](const Eigen::Vector2d& k) { return Eigen::Vector2d(-apply(m.map, k)); };
        if (band_symmetry_holds(model, composite, grid_n, tol))
            emit({-m.line.y(), m.line.x()}, "T*" + std::string(to_string(m.map)));
    }
    return out;
}

std::string poles_csv(const ScatterReport& r) {
    std::string out = "re,im,abs_z,side,C_re,C_im\n";
    for (const auto* set : {&r.poles_in, &r.poles_out})
        for (const Pole& p : *set)
            out += csv_row({p.z.real(), p.z.imag(), p.modulus, set == &r.poles_in ? "in" : "out", p.residue.real(),
                            p.residue.imag()});
    return out;
}

std::string scatter_summary(const ScatterReport& r) {
    const Eigen::Vector2i d = r.frame_flipped ? Eigen::Vector2i(-r.frame.direction) : r.frame.direction;
    std::string s = "w=" + std::to_string(r.winding) + " classification=" + std::string(to_string(r.classification)) +
                    " kappa=" + format_double(r.kappa) + " E0=" + fmt_c(r.energy) +
                    " direction=" + std::to_string(d.x()) + "," + std::to_string(d.y()) +
                    " flipped=" + (r.frame_flipped ? "true" : "false") + " m=" + std::to_string(r.m) +
                    " n=" + std::to_string(r.n);
    if (r.partner) s += " partner=" + format_double(r.partner->x()) + "," + format_double(r.partner->y());
    return s + "\n";
}

std::string profile_csv(const ScatteredProfile& p) {
    std::string out = "r_perp,re,im,abs\n";
    for (const auto& pt : p.points) out += csv_row({pt.r_perp, pt.value.real(), pt.value.imag(), std::abs(pt.value)});
    return out;
}

} // namespace ddsim
