#include "doctest.h"

#include <algorithm>
#include <numbers>
#include <random>

#include "ddsim/efc.hpp"
#include "ddsim/error.hpp"
#include "ddsim/scattering.hpp"
#include "oracles.hpp"

using namespace ddsim;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

// E + i eta - H (or its determinant) at z = exp(i phi), straight from the
// Bloch matrix.
cd g_direct(const BlochModel& m, const LatticeFrame& f, double k_theta, cd e, double eta, double phi) {
    const Eigen::MatrixXcd h = bloch_matrix(m, f.momentum(k_theta, phi));
    return (cd(e.real(), e.imag() + eta) * Eigen::MatrixXcd::Identity(h.rows(), h.cols()) - h).determinant();
}

// Laurent coefficients of g on the unit circle by DFT.
std::map<int, cd> g_coefficients(const BlochModel& m, const LatticeFrame& f, double k_theta, cd e, double eta) {
    const int n = 32;
    std::map<int, cd> out;
    for (int p = -n / 2 + 1; p < n / 2; ++p) {
        cd sum = 0;
        for (int j = 0; j < n; ++j) {
            const double phi = 2 * pi * j / n;
            sum += g_direct(m, f, k_theta, e, eta, phi) * std::polar(1.0, -p * phi);
        }
        if (std::abs(sum / double(n)) > 1e-12) out[p] = sum / double(n);
    }
    return out;
}

// (1/2 pi) int dk exp(i k r) / g(k), trapezoid rule (periodic integrand).
cd green_by_quadrature(const BlochModel& m, const LatticeFrame& f, double k_theta, cd e, double eta, int r) {
    const int n = 1 << 16;
    cd sum = 0;
    for (int j = 0; j < n; ++j) {
        const double k = 2 * pi * j / n;
        sum += std::polar(1.0, k * r) / g_direct(m, f, k_theta, e, eta, k);
    }
    return sum / double(n);
}

std::vector<cd> sorted_roots(const ScatterReport& r) {
    std::vector<cd> z;
    for (const auto& p : r.poles_in) z.push_back(p.z);
    for (const auto& p : r.poles_out) z.push_back(p.z);
    std::sort(z.begin(), z.end(), [](cd a, cd b) { return std::pair(a.real(), a.imag()) < std::pair(b.real(), b.imag()); });
    return z;
}

} // namespace

TEST_CASE("line_frame") {
    const LatticeFrame v = line_frame({0, 1});
    CHECK(v.complement == Eigen::Vector2i(-1, 0));
    CHECK(v.unimodular().determinant() == 1);

    const LatticeFrame d = line_frame({1, 1});
    CHECK(d.complement == Eigen::Vector2i(0, 1));
    Eigen::Matrix2i u;
    u << 1, 0, 1, 1;
    CHECK(d.unimodular() == u);

    const LatticeFrame a = line_frame({-1, 1});
    CHECK(a.unimodular().determinant() == 1);
    CHECK(a.unimodular() * Eigen::Vector2i(1, 0) == Eigen::Vector2i(-1, 1));

    for (const Eigen::Vector2i dir : {Eigen::Vector2i(2, 3), Eigen::Vector2i(-5, 2), Eigen::Vector2i(1, 0)}) {
        const LatticeFrame f = line_frame(dir);
        CHECK(f.unimodular().determinant() == 1);
        // coordinates round-trip and momenta decompose consistently
        const Eigen::Vector2i r(7, -3);
        CHECK(f.r_theta(r) * f.direction + f.r_perp(r) * f.complement == r);
        const Eigen::Vector2d k(0.3, -1.1);
        CHECK((f.momentum(f.k_theta(k), f.k_perp(k)) - k).norm() < 1e-14);
        CHECK(f.flipped().unimodular().determinant() == 1);
    }
    CHECK_THROWS_AS(line_frame({2, 4}), InputError);
    CHECK_THROWS_AS(line_frame({0, 0}), InputError);
}

TEST_CASE("boundary_polynomial: single-band model along a vertical line") {
    const BlochModel m = builtin_model("fig2");
    const LatticeFrame f = line_frame({0, 1});
    const double kt = 0.7;
    const cd e(0.4, -0.2);
    const BoundaryPoly bp = boundary_polynomial(m, f, kt, e, 0.01);
    CHECK(bp.m == 1);
    CHECK(bp.n == 1);
    CHECK(bp.laurent.low() == -1);
    CHECK(bp.laurent.high() == 1);
    for (int j = 0; j < 16; ++j) {
        const double phi = 2 * pi * j / 16;
        CHECK(std::abs(bp.laurent(std::polar(1.0, phi)) - g_direct(m, f, kt, e, 0.01, phi)) < 1e-13);
    }

    const BoundaryPoly c = boundary_polynomial(build_model({"c", 1, {}, {"cos(kx)"}}), f, 0.2, 1.0, 0.5);
    CHECK(c.laurent.coeff(1) == cd(-0.5));
    CHECK(c.laurent.coeff(-1) == cd(-0.5));
    CHECK(c.laurent.coeff(0) == cd(1.0, 0.5));

    CHECK_THROWS_AS(boundary_polynomial(build_model({"c", 1, {}, {"cos(ky)"}}), f, 0.0, 1.0, 0.0), NumericalError);
}

TEST_CASE("boundary_polynomial: two-band determinant") {
    const BlochModel m = builtin_model("gdse2band");
    for (const Eigen::Vector2i dir : {Eigen::Vector2i(0, 1), Eigen::Vector2i(1, 1), Eigen::Vector2i(1, 2)}) {
        const LatticeFrame f = line_frame(dir);
        const cd e(1.5, 0.0);
        const BoundaryPoly bp = boundary_polynomial(m, f, 0.9, e, 1e-3);
        const auto ref = g_coefficients(m, f, 0.9, e, 1e-3);
        CHECK(ref.begin()->first == -bp.m);
        CHECK(ref.rbegin()->first == bp.n);
        for (int p = -bp.m; p <= bp.n; ++p) {
            const cd want = ref.count(p) ? ref.at(p) : cd(0);
            CHECK(std::abs(bp.laurent.coeff(p) - want) < 1e-12);
        }
        if (dir == Eigen::Vector2i(0, 1)) {
            CHECK(bp.m == 2);
            CHECK(bp.n == 2);
        }
    }
}

TEST_CASE("pole_partition: quadratic case against the closed form") {
    // H = 2 cos kx = z + 1/z along a vertical line
    const BlochModel m = build_model({"chain", 1, {}, {"2*cos(kx)"}});
    const double eta = 0.2;
    const cd e(3, eta);
    const ScatterReport r = pole_partition(boundary_polynomial(m, line_frame({0, 1}), 0.0, 3.0, eta));
    REQUIRE(r.poles_in.size() == 1);
    REQUIRE(r.poles_out.size() == 1);
    const cd s = std::sqrt(e * e - 4.0);
    const cd z1 = (e + s) / 2.0, z2 = (e - s) / 2.0;
    const cd zin = std::abs(z1) < 1 ? z1 : z2, zout = std::abs(z1) < 1 ? z2 : z1;
    CHECK(std::abs(r.poles_in[0].z - zin) < 1e-12);
    CHECK(std::abs(r.poles_out[0].z - zout) < 1e-12);
    CHECK(std::abs(r.poles_in[0].z * r.poles_out[0].z - 1.0) < 1e-12);
    // residue of 1/(z g) with g = e - z - 1/z: 1/(z g) = -1/((z - z1)(z - z2))
    const cd c_in = cd(0, 2 * pi) * (-1.0 / (zin - zout));
    CHECK(std::abs(r.poles_in[0].residue - c_in) < 1e-12);
}

TEST_CASE("pole_partition: Hermitian chain straddles the unit circle") {
    const BlochModel m = build_model({"chain", 1, {}, {"cos(kx)"}});
    const ScatterReport r = pole_partition(boundary_polynomial(m, line_frame({0, 1}), 0.0, 0.3, 1e-4));
    REQUIRE(r.poles_in.size() == 1);
    REQUIRE(r.poles_out.size() == 1);
    const double v = std::sqrt(1 - 0.3 * 0.3); // |dE/dk| at the crossing
    CHECK(1 - r.poles_in[0].modulus == doctest::Approx(1e-4 / v).epsilon(1e-3));
    CHECK(r.poles_out[0].modulus - 1 == doctest::Approx(1e-4 / v).epsilon(1e-3));
}

TEST_CASE("residues sum to zero on random instances") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    const std::vector<std::string> names{"fig2", "fig4", "sm-singleband", "gdse2band"};
    const std::vector<Eigen::Vector2i> dirs{{0, 1}, {1, 0}, {1, 1}, {-1, 1}, {1, 2}, {-2, 1}};
    int tested = 0;
    for (int n = 0; n < 200; ++n) {
        const BlochModel m = builtin_model(names[n % names.size()]);
        const LatticeFrame f = line_frame(dirs[(n / 4) % dirs.size()]);
        const cd e(2 * u(rng), u(rng));
        const BoundaryPoly bp = boundary_polynomial(m, f, pi * u(rng), e, 0.05 + 0.1 * std::abs(u(rng)));
        if (bp.n < 1 || bp.m < 1) continue;
        const ScatterReport r = pole_partition(bp);
        cd sum = 0;
        double largest = 0;
        for (const auto* set : {&r.poles_in, &r.poles_out})
            for (const auto& p : *set) {
                sum += p.residue;
                largest = std::max(largest, p.modulus);
            }
        CHECK(std::abs(sum) < 1e-9);
        // brute-force oint dz / (z g) on a circle enclosing every root
        const double radius = 2 * largest + 1;
        const int samples = 4096;
        cd integral = 0;
        for (int j = 0; j < samples; ++j) {
            const cd z = std::polar(radius, 2 * pi * j / samples);
            integral += cd(0, 2 * pi / samples) / bp.laurent(z); // dz / z = i dphi
        }
        CHECK(std::abs(integral) < 1e-8);
        ++tested;
    }
    CHECK(tested == 200);
}

TEST_CASE("winding number: two methods agree on random instances") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1, 1);
    const std::vector<std::string> names{"fig2", "fig4", "sm-singleband", "gdse2band"};
    const std::vector<Eigen::Vector2i> dirs{{0, 1}, {1, 0}, {1, 1}, {-1, 1}, {1, 2}, {3, -1}};
    std::map<int, int> seen;
    for (int n = 0; n < 200; ++n) {
        const BlochModel m = builtin_model(names[n % names.size()]);
        const LatticeFrame f = line_frame(dirs[(n / 4) % dirs.size()]);
        const BoundaryPoly bp = boundary_polynomial(m, f, pi * u(rng), cd(2 * u(rng), u(rng)), 0.01 * u(rng));
        const double arg = winding_by_argument(bp);
        const int w = winding_number(bp);
        CHECK(std::lround(arg) == w);
        CHECK(std::abs(arg - w) < 1e-6);
        ++seen[w];
    }
    CHECK(seen.size() >= 3); // nontrivial windings occur
}

TEST_CASE("winding number: Hermitian model off the spectrum") {
    const BlochModel m = builtin_model("gdse2band", {{"gamma", 0.0}});
    for (const Eigen::Vector2i dir : {Eigen::Vector2i(0, 1), Eigen::Vector2i(1, 1)}) {
        CHECK(winding_number(boundary_polynomial(m, line_frame(dir), 0.3, 5.0, 0.0)) == 0);
        CHECK(winding_number(boundary_polynomial(m, line_frame(dir), 0.3, 1.0, 0.5)) == 0);
    }
}

TEST_CASE("winding increases by one as the reference energy crosses the incident state") {
    const BlochModel m = builtin_model("gdse2band");
    for (const Eigen::Vector2i dir : {Eigen::Vector2i(1, 1), Eigen::Vector2i(-1, 1)}) {
        const ScatterReport r = classify_scattering(m, {pi / 2, 0}, dir);
        const int below = winding_number(boundary_polynomial(m, r.frame, r.k_theta, r.energy, -1e-3));
        const int above = winding_number(boundary_polynomial(m, r.frame, r.k_theta, r.energy, 1e-3));
        CHECK(above - below == 1);
    }
}

TEST_CASE("classification of the two-band model") {
    const BlochModel m = builtin_model("gdse2band");
    const Eigen::Vector2d ki(pi / 2, 0);

    const ScatterReport v = classify_scattering(m, ki, {0, 1});
    CHECK(v.classification == Classification::Conventional);
    CHECK(v.kappa == 0);
    CHECK(std::abs(v.energy - cd(1.5, 0)) < 1e-12);
    REQUIRE(v.partner);
    CHECK((*v.partner - apply(MomentumMap::Mx, ki)).norm() < 1e-6);
    CHECK(v.linearity_residual < 0.1);
    for (const auto& s : v.schedule) CHECK(s.out_min - 1 == doctest::Approx(1 - s.in_max).epsilon(0.05));

    for (const Eigen::Vector2i dir : {Eigen::Vector2i(1, 1), Eigen::Vector2i(-1, 1)}) {
        const ScatterReport d = classify_scattering(m, ki, dir);
        CHECK(d.classification == Classification::Anomalous);
        CHECK(d.kappa > 1e-2);
        CHECK_FALSE(d.partner);
        CHECK(std::abs(std::log(std::abs(d.dominant_out)) - d.kappa) < 1e-3);
    }

    // the band with Re E nearest omega is chosen when omega is given
    ClassifyOptions opt;
    opt.omega = 1.5;
    CHECK(classify_scattering(m, ki, {0, 1}, opt).classification == Classification::Conventional);
}

TEST_CASE("Hermitian limit scatters conventionally") {
    const BlochModel m = builtin_model("gdse2band", {{"gamma", 0.0}});
    const Contour c = efc_extract(m, 1.2, 48);
    REQUIRE_FALSE(c.empty());
    int tested = 0;
    for (const auto& line : c.polylines)
        for (std::size_t p = 0; p < line.points.size(); p += 7) {
            const auto& pt = line.points[p];
            for (const Eigen::Vector2i dir : {Eigen::Vector2i(0, 1), Eigen::Vector2i(1, 1), Eigen::Vector2i(1, 2)}) {
                const double vp = pt.v.dot(line_frame(dir).dual_perp().cast<double>());
                if (std::abs(vp) < 0.05 * pt.v.norm()) continue;
                ClassifyOptions opt;
                opt.omega = 1.2;
                const ScatterReport r = classify_scattering(m, pt.k, dir, opt);
                CHECK(r.classification == Classification::Conventional);
                ++tested;
            }
        }
    CHECK(tested > 10);
}

TEST_CASE("reciprocal bands give reciprocal roots") {
    const BlochModel m = builtin_model("gdse2band");
    const LatticeFrame f = line_frame({1, 1});
    for (double kt : {0.3, 1.1, -2.0}) {
        const cd e(1.3, -0.2);
        const auto a = sorted_roots(pole_partition(boundary_polynomial(m, f, kt, e, 0.0)));
        const auto b = sorted_roots(pole_partition(boundary_polynomial(m, f, -kt, e, 0.0)));
        REQUIRE(a.size() == b.size());
        for (const cd& z : a) {
            double best = 1e300;
            for (const cd& w : b) best = std::min(best, std::abs(z - 1.0 / w));
            CHECK(best < 1e-9);
        }
    }
}

TEST_CASE("lattice Green's function from poles matches quadrature") {
    for (const char* name : {"fig2", "sm-singleband"}) {
        INFO(name);
        const BlochModel m = builtin_model(name);
        const Eigen::Vector2d ki = std::string(name) == "fig2" ? Eigen::Vector2d(0.4, 1.0) : Eigen::Vector2d(1.0, 0.0);
        for (const Eigen::Vector2i dir : {Eigen::Vector2i(0, 1), Eigen::Vector2i(-1, 1)}) {
            ClassifyOptions opt;
            opt.eta_schedule = {2e-2, 1e-2};
            const ScatterReport r = classify_scattering(m, ki, dir, opt);
            for (int rp : {-6, -1, 0, 1, 4}) {
                const cd ref = green_by_quadrature(m, r.frame, r.k_theta, r.energy, 1e-2, rp);
                CHECK(std::abs(line_green(r, rp) - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
            }
        }
    }
}

TEST_CASE("scattered profile") {
    const BlochModel m = builtin_model("sm-singleband");
    const Eigen::Vector2d ki(1, 0);

    const ScatteredProfile zero = scattered_profile(m, ki, {-1, 1}, 0.0, -5, 5);
    for (const auto& p : zero.points) CHECK(std::abs(p.value) == 0);

    const ScatteredProfile prof = scattered_profile(m, ki, {-1, 1}, 1.5, -30, 30);
    const ScatterReport& r = prof.report;
    // both pole branches agree on the line
    cd inside = 0, outside = 0;
    for (const auto& p : r.poles_in) inside += p.residue;
    for (const auto& p : r.poles_out) outside -= p.residue;
    CHECK(std::abs(inside - outside) < 1e-9);
    CHECK(std::abs(prof.psi0 - 1.0 / (1.0 - 1.5 * prof.g0)) < 1e-14);

    REQUIRE(r.classification == Classification::Anomalous);
    double a = 0;
    for (const auto& p : r.poles_out) a += std::abs(p.residue) / (2 * pi);
    a *= 1.5 * std::abs(prof.psi0);
    for (const auto& p : prof.points)
        if (p.r_perp >= -30 && p.r_perp <= -5) CHECK(std::abs(p.value) <= a * std::exp(r.kappa * p.r_perp) * (1 + 1e-6));
    // the reflected side decays, the transmitted side does not
    CHECK(std::abs(prof.points.front().value) < 1e-2 * std::abs(prof.points.back().value));

    CHECK_THROWS_AS(scattered_profile(builtin_model("gdse2band"), {pi / 2, 0}, {0, 1}, 1.0, -1, 1), InputError);
}

TEST_CASE("single-band model: vertical conventional, oblique anomalous") {
    const BlochModel m = builtin_model("sm-singleband");
    const ScatterReport v = classify_scattering(m, {1, 0}, {0, 1});
    CHECK(v.classification == Classification::Conventional);
    REQUIRE(v.partner);
    CHECK((*v.partner - Eigen::Vector2d(-1, 0)).norm() < 1e-6);
    const ScatterReport o = classify_scattering(m, {1, 0}, {-1, 1});
    CHECK(o.classification == Classification::Anomalous);
}

TEST_CASE("symmetry-protected directions") {
    const auto gd = symmetry_protected_directions(builtin_model("gdse2band"));
    REQUIRE(gd.size() == 2);
    CHECK(gd[0].direction == Eigen::Vector2i(0, 1));
    CHECK(gd[0].guarantee == "Mx");
    CHECK(gd[1].direction == Eigen::Vector2i(1, 0));

    const auto sm = symmetry_protected_directions(builtin_model("sm-singleband"));
    CHECK(std::any_of(sm.begin(), sm.end(), [](const auto& d) { return d.direction == Eigen::Vector2i(0, 1); }));

    const auto f2 = symmetry_protected_directions(builtin_model("fig2"));
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].direction == Eigen::Vector2i(1, 0));

    const BlochModel none = build_model({"n", 1, {}, {"exp(i*kx) + 0.7*exp(2*i*ky) + 0.4*i*exp(-i*(kx + 2*ky))"}});
    CHECK(symmetry_protected_directions(none).empty());
}

TEST_CASE("protected directions classify conventionally") {
    const BlochModel m = builtin_model("gdse2band");
    const Contour c = efc_extract(m, 1.5, 64);
    std::vector<ContourPoint> pts;
    for (const auto& line : c.polylines)
        for (const auto& p : line.points) pts.push_back(p);
    std::mt19937 rng(31);
    std::shuffle(pts.begin(), pts.end(), rng);
    for (const auto& d : symmetry_protected_directions(m)) {
        int tested = 0;
        for (const auto& p : pts) {
            if (tested == 10) break;
            const double vp = p.v.dot(line_frame(d.direction).dual_perp().cast<double>());
            if (std::abs(vp) < 0.05 * p.v.norm()) continue;
            ClassifyOptions opt;
            opt.omega = 1.5;
            CHECK(classify_scattering(m, p.k, d.direction, opt).classification == Classification::Conventional);
            ++tested;
        }
        CHECK(tested == 10);
    }
}

TEST_CASE("report serialization") {
    const ScatterReport r = classify_scattering(builtin_model("gdse2band"), {pi / 2, 0}, {0, 1});
    const std::string csv = poles_csv(r);
    CHECK(csv.rfind("re,im,abs_z,side,C_re,C_im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    const std::string s = scatter_summary(r);
    CHECK(s.find("classification=Conventional") != std::string::npos);
    CHECK(s.find("w=0") != std::string::npos);
}
