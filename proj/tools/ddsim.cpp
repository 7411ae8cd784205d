// ddsim: command-line front end. Every subcommand writes CSVs, gnuplot
// scripts and a key=value manifest into the output directory.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "ddsim/csv.hpp"
#include "ddsim/dynamics.hpp"
#include "ddsim/efc.hpp"
#include "ddsim/error.hpp"
#include "ddsim/expression.hpp"
#include "ddsim/model.hpp"
#include "ddsim/model_file.hpp"
#include "ddsim/obc.hpp"
#include "ddsim/parallel.hpp"
#include "ddsim/plot.hpp"
#include "ddsim/scattering.hpp"

namespace fs = std::filesystem;
using namespace ddsim;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kOutEnv = "DDSIM_OUT";

// --- value parsing -------------------------------------------------------

double parse_number(const std::string& text) {
    const std::complex<double> v = evaluate_expression(text, {}, Eigen::Vector2d::Zero());
    if (std::abs(v.imag()) > 1e-15) throw InputError("expected a real number, got '" + text + "'");
    return v.real();
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& p : split(text, ',')) out.push_back(parse_number(p));
    return out;
}

Eigen::Vector2d parse_vec2(const std::string& text, const char* what) {
    const auto v = parse_list(text);
    if (v.size() != 2) throw InputError(std::string(what) + " needs two comma-separated values, got '" + text + "'");
    return {v[0], v[1]};
}

Eigen::Vector2i parse_ivec2(const std::string& text, const char* what) {
    const Eigen::Vector2d v = parse_vec2(text, what);
    const Eigen::Vector2i r(static_cast<int>(std::lround(v.x())), static_cast<int>(std::lround(v.y())));
    if ((r.cast<double>() - v).norm() > 1e-12) throw InputError(std::string(what) + " must be integers");
    return r;
}

Eigen::VectorXcd parse_spinor(const std::string& text, int q) {
    if (text.empty()) return Eigen::VectorXcd::Ones(q);
    const auto parts = split(text, ',');
    if (static_cast<int>(parts.size()) != q)
        throw InputError("spinor needs " + std::to_string(q) + " components, got '" + text + "'");
    Eigen::VectorXcd s(q);
    for (int i = 0; i < q; ++i) s(i) = evaluate_expression(parts[i], {}, Eigen::Vector2d::Zero());
    return s;
}

// --- run context ---------------------------------------------------------

struct Run {
    std::string command;
    std::string model_arg;
    std::vector<std::string> params;
    std::string out_arg;
    int threads = 1;

    std::optional<BlochModel> model_storage;
    const BlochModel& model() const { return *model_storage; }
    std::string model_source;
    fs::path out;
    std::vector<std::pair<std::string, std::string>> manifest;
    std::vector<std::string> outputs;

    void record(const std::string& key, const std::string& value) { manifest.emplace_back(key, value); }
    void record(const std::string& key, double value) { record(key, format_double(value)); }

    void write(const std::string& name, const std::string& text) {
        write_text_file(out / name, text);
        outputs.push_back(name);
    }

    void warn(const std::string& message) { std::cerr << "warning: " << message << "\n"; }

    void setup(const std::string& default_model) {
        if (model_arg.empty()) model_arg = default_model;
        ParamMap overrides;
        for (const auto& p : params) {
            const auto eq = p.find('=');
            if (eq == std::string::npos || eq == 0) throw InputError("--param expects name=value, got '" + p + "'");
            overrides[p.substr(0, eq)] = parse_number(p.substr(eq + 1));
        }

        ModelSpec spec;
        const auto names = builtin_names();
        if (std::find(names.begin(), names.end(), model_arg) != names.end()) {
            spec = builtin_spec(model_arg);
            model_source = "builtin";
        } else if (fs::is_regular_file(model_arg)) {
            spec = read_model_file(model_arg);
            model_source = "file";
        } else {
            throw InputError("'" + model_arg + "' is neither a built-in model nor a readable model file");
        }
        for (const auto& [k, v] : overrides) {
            auto it = spec.params.find(k);
            if (it == spec.params.end()) throw InputError("model '" + spec.name + "' has no parameter '" + k + "'");
            it->second = v;
        }
        model_storage = build_model(spec);

        if (out_arg.empty()) {
            const char* env = std::getenv(kOutEnv);
            out_arg = env && *env ? env : "ddsim-out";
        }
        out = out_arg;
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec) throw InputError("cannot create output directory '" + out_arg + "': " + ec.message());

        if (threads < 1) throw InputError("--threads must be >= 1");
        set_thread_count(threads);

        record("subcommand", command);
        record("model", spec.name);
        record("model_source", model_source == "file" ? model_arg : std::string("builtin"));
        record("model_dim", std::to_string(spec.dim));
        for (const auto& [k, v] : spec.params) record("param." + k, v);
        for (int r = 0; r < spec.dim; ++r)
            for (int c = 0; c < spec.dim; ++c)
                record("H" + std::to_string(r + 1) + std::to_string(c + 1), spec.entry(r, c));
        record("threads", std::to_string(threads));
    }

    void finish(double seconds) {
        record("version", kVersion);
        record("eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION));
        record("compiler", __VERSION__);
        std::string files;
        for (const auto& o : outputs) files += (files.empty() ? "" : ",") + o;
        record("outputs", files);
        record("wall_time_s", seconds);
        std::string text;
        for (const auto& [k, v] : manifest) text += k + "=" + v + "\n";
        write_text_file(out / "manifest.txt", text);
    }
};

std::string vec_string(const Eigen::Vector2d& v) { return format_double(v.x()) + "," + format_double(v.y()); }
std::string ivec_string(const Eigen::Vector2i& v) { return std::to_string(v.x()) + "," + std::to_string(v.y()); }

// --- subcommands ---------------------------------------------------------

struct BandsArgs {
    int grid = 64;
};

void run_bands(Run& run, const BandsArgs& a) {
    run.setup("gdse2band");
    if (a.grid < 2) throw InputError("--grid must be >= 2");
    run.record("grid", std::to_string(a.grid));
    const int n = a.grid;
    std::vector<BandSet> sets(static_cast<std::size_t>(n) * n);
    parallel_for(n * n, [&](int idx) {
        sets[idx] = bands(run.model(), {bz_coordinate(idx % n, n), bz_coordinate(idx / n, n)});
    });
    std::string csv = "kx,ky,band,reE,imE\n";
    for (const auto& s : sets)
        for (int b = 0; b < s.energies.size(); ++b)
            csv += csv_row({s.k.x(), s.k.y(), b, s.energies(b).real(), s.energies(b).imag()});
    run.write("bands.csv", csv);
    run.write("bands.gp", plot::complex_plane_script("bands.csv", 4, 5, "Bloch spectrum"));
    std::cout << "bands: " << sets.size() << " momenta, ordering " << BandSet::ordering << "\n";
}

struct EfcArgs {
    double omega = 1.5;
    int grid = 128;
};

void run_efc(Run& run, const EfcArgs& a) {
    run.setup("gdse2band");
    run.record("omega", a.omega);
    run.record("grid", std::to_string(a.grid));
    const Contour c = efc_extract(run.model(), a.omega, a.grid);
    run.write("contour.csv", contour_csv(c));
    run.write("contour.gp", plot::contour_script("contour.csv", "EFC, omega = " + format_double(a.omega)));
    if (c.empty()) run.warn("empty contour: omega lies outside the range of Re E");
    std::cout << "efc: " << c.polylines.size() << " polylines, " << c.num_points() << " points\n";
}

struct SpecfunArgs {
    double omega = 1.5;
    double eta = 0.02;
    int grid = 128;
};

void run_specfun(Run& run, const SpecfunArgs& a) {
    run.setup("gdse2band");
    if (!(a.eta > 0)) throw InputError("--eta must be positive");
    run.record("omega", a.omega);
    run.record("eta", a.eta);
    run.record("grid", std::to_string(a.grid));
    run.write("spectral.csv", spectral_grid_csv(run.model(), a.omega, a.eta, a.grid));
    run.write("spectral.gp",
              plot::heatmap_script("spectral.csv", "A(omega, k), omega = " + format_double(a.omega), 3, "k_x", "k_y"));
    std::cout << "specfun: " << a.grid * a.grid << " grid points\n";
}

struct DdsArgs {
    double omega = -0.5;
    int grid = 128;
    double tau = 1e-6;
};

void run_dds(Run& run, const DdsArgs& a) {
    run.setup("fig4");
    run.record("omega", a.omega);
    run.record("grid", std::to_string(a.grid));
    run.record("tau", a.tau);
    const Contour c = efc_extract(run.model(), a.omega, a.grid);
    const DdsReport r = dds_report(c, a.tau);
    std::string line = "omega=" + format_double(r.omega) + " dds_present=" + (r.dds_present ? "true" : "false") +
                       " im_min=" + format_double(r.im_min) + " im_max=" + format_double(r.im_max) +
                       " im_spread=" + format_double(r.im_spread) + " polylines=" + std::to_string(r.polylines.size()) +
                       (r.empty_contour ? " empty_contour=true" : "") + "\n";
    std::string per = "polyline_id,points,im_min,im_max,im_mean\n";
    for (std::size_t i = 0; i < r.polylines.size(); ++i) {
        const auto& p = r.polylines[i];
        per += csv_row({i, p.points, p.im_min, p.im_max, p.im_mean});
    }
    run.write("dds.txt", line);
    run.write("dds_polylines.csv", per);
    run.write("contour.csv", contour_csv(c));
    run.write("contour.gp", plot::contour_script("contour.csv", "Im E on the EFC, omega = " + format_double(a.omega)));
    if (r.empty_contour) run.warn("empty contour: no DDS verdict");
    std::cout << line;
}

struct ScatterArgs {
    std::string ki = "pi/2,0";
    std::string direction = "0,1";
    std::optional<double> omega;
    std::string eta_schedule = "1e-2,1e-3,1e-4";
    double kappa_threshold = 1e-3;
};

ClassifyOptions classify_options(const ScatterArgs& a, Run& run) {
    ClassifyOptions opt;
    opt.eta_schedule = parse_list(a.eta_schedule);
    opt.kappa_threshold = a.kappa_threshold;
    opt.omega = a.omega;
    run.record("eta_schedule", a.eta_schedule);
    run.record("kappa_threshold", a.kappa_threshold);
    run.record("omega", a.omega ? format_double(*a.omega) : std::string("auto"));
    return opt;
}

void run_scatter(Run& run, const ScatterArgs& a) {
    run.setup("gdse2band");
    const Eigen::Vector2d ki = parse_vec2(a.ki, "--ki");
    const Eigen::Vector2i dir = parse_ivec2(a.direction, "--direction");
    run.record("ki", vec_string(ki));
    run.record("direction", ivec_string(dir));
    const ScatterReport r = classify_scattering(run.model(), ki, dir, classify_options(a, run));
    for (const auto& w : r.warnings) run.warn(w);
    run.write("poles.csv", poles_csv(r));
    run.write("poles.gp", plot::poles_script("poles.csv", "poles of 1/(z g)"));
    std::string schedule = "eta,in_max,out_min,winding\n";
    for (const auto& s : r.schedule) schedule += csv_row({s.eta, s.in_max, s.out_min, s.winding});
    run.write("eta_schedule.csv", schedule);
    const std::string summary = scatter_summary(r);
    run.write("summary.txt", summary);
    std::cout << summary;
}

struct ProfileArgs {
    ScatterArgs scatter{"1,0", "-1,1", std::nullopt, "1e-2,1e-3,1e-4", 1e-3};
    double lambda = 1.5;
    int r_min = -30;
    int r_max = 30;
};

void run_profile(Run& run, const ProfileArgs& a) {
    run.setup("sm-singleband");
    const Eigen::Vector2d ki = parse_vec2(a.scatter.ki, "--ki");
    const Eigen::Vector2i dir = parse_ivec2(a.scatter.direction, "--direction");
    run.record("ki", vec_string(ki));
    run.record("direction", ivec_string(dir));
    run.record("lambda", a.lambda);
    run.record("r_min", std::to_string(a.r_min));
    run.record("r_max", std::to_string(a.r_max));
    const ScatteredProfile p =
        scattered_profile(run.model(), ki, dir, a.lambda, a.r_min, a.r_max, classify_options(a.scatter, run));
    for (const auto& w : p.report.warnings) run.warn(w);
    run.write("profile.csv", profile_csv(p));
    run.write("profile.gp", plot::profile_script("profile.csv", "scattered wave along r_perp"));
    run.write("poles.csv", poles_csv(p.report));
    const std::string summary = scatter_summary(p.report);
    run.write("summary.txt", summary);
    std::cout << summary;
}

struct WavepacketArgs {
    int size = 40;
    double x0 = 14, y0 = 20, sigma = 4;
    std::string ki = "pi/2,0";
    std::string spinor;
    double lambda = 1;
    std::string line = "0,1";
    std::string origin;
    std::string times = "1,5,9,13,17";
    double dt = 0;
    int strip = 3;
    bool no_renormalize = false;
};

void run_wavepacket(Run& run, const WavepacketArgs& a) {
    run.setup("gdse2band");
    if (a.size < 2) throw InputError("--size must be >= 2");
    const auto geo = LatticeGeometry::square(a.size);
    const Eigen::Vector2d ki = parse_vec2(a.ki, "--ki");
    ImpurityLine line{parse_ivec2(a.line, "--line"), a.lambda, std::nullopt};
    if (!a.origin.empty()) line.origin = parse_ivec2(a.origin, "--origin");
    const std::vector<double> times = parse_list(a.times);
    if (times.empty()) throw InputError("--times needs at least one value");
    const Eigen::Vector2d r0(a.x0, a.y0);

    std::vector<std::string> warnings;
    const WaveState psi0 = gaussian_packet(geo, r0, a.sigma, ki, parse_spinor(a.spinor, run.model().dim()), &warnings);
    for (const auto& w : warnings) run.warn(w);
    const SparseMatrixXcd op = real_space_operator(run.model(), geo, impurity_potential(geo, line));
    const double dt = a.dt > 0 ? a.dt : std::min(0.02, max_stable_dt(op));
    const int steps = static_cast<int>(std::lround(times.back() / dt));

    run.record("size", std::to_string(a.size));
    run.record("x0", a.x0);
    run.record("y0", a.y0);
    run.record("sigma", a.sigma);
    run.record("ki", vec_string(ki));
    run.record("spinor", a.spinor.empty() ? std::string("ones") : a.spinor);
    run.record("lambda", a.lambda);
    run.record("line", ivec_string(line.direction));
    run.record("origin", ivec_string(line_origin(geo, line)));
    run.record("times", a.times);
    run.record("dt", dt);
    run.record("steps", std::to_string(steps));
    run.record("strip", std::to_string(a.strip));
    run.record("renormalize", a.no_renormalize ? "false" : "true");

    Trajectory traj = evolve(op, psi0, dt, steps, times, !a.no_renormalize);
    traj.weights = region_weights(traj, line_partition(geo, line, r0, a.strip));

    std::vector<std::string> files;
    std::string weights = "t,reflected,strip,transmitted\n";
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%02zu.csv", i);
        run.write(name, snapshot_csv(traj.snapshots[i]));
        files.emplace_back(name);
        auto& w = (*traj.weights)[i];
        weights += csv_row({traj.snapshots[i].time, w[Reflected], w[Strip], w[Transmitted]});
    }
    run.write("weights.csv", weights);
    run.write("snapshots.gp", plot::snapshots_script(files, times, "wave packet, line " + ivec_string(line.direction)));
    const auto& last = traj.weights->back();
    std::cout << "wavepacket: " << files.size() << " snapshots, final reflected=" << format_double(last.at(Reflected))
              << " transmitted=" << format_double(last.at(Transmitted)) << "\n";
}

struct ObcArgs {
    std::string geometry = "diamond";
    int size = 40;
    double omega = -0.5;
    double delta = 0.05;
    int edge_width = 3;
    int max_dim = 8000;
};

void run_obc(Run& run, const ObcArgs& a) {
    run.setup("fig4");
    const LatticeGeometry geo = a.geometry == "diamond"  ? LatticeGeometry::diamond(a.size)
                                : a.geometry == "square" ? LatticeGeometry::square(a.size)
                                                         : throw InputError("--geometry must be diamond or square");
    run.record("geometry", a.geometry);
    run.record("size", std::to_string(a.size));
    run.record("omega", a.omega);
    run.record("delta", a.delta);
    run.record("edge_width", std::to_string(a.edge_width));
    ObcOptions opt;
    opt.max_dim = a.max_dim;
    const Spectrum s = obc_spectrum(run.model(), geo, opt);
    run.write("spectrum.csv", spectrum_csv(s));
    run.write("spectrum.gp", plot::complex_plane_script("spectrum.csv", 2, 3, "open-boundary spectrum"));
    run.write("geometry.csv", geo.to_csv());
    const DensityField f = frequency_density(s, a.omega, a.delta);
    const LocalizationMetrics m = localization_metrics(f, geo, a.edge_width);
    run.write("density.csv", density_csv(f, geo));
    run.write("density.gp",
              plot::heatmap_script("density.csv", "P_omega(r), omega = " + format_double(a.omega), 3, "x", "y"));
    const std::string summary = metrics_summary(f, m);
    run.write("metrics.txt", summary);
    std::cout << summary;
}

struct SymmetryArgs {
    int grid = 32;
    double tol = 1e-9;
    double omega = 1.5;
    int samples = 20;
    unsigned seed = 1;
};

void run_symmetry(Run& run, const SymmetryArgs& a) {
    run.setup("gdse2band");
    run.record("grid", std::to_string(a.grid));
    run.record("tol", a.tol);
    run.record("omega", a.omega);
    run.record("samples", std::to_string(a.samples));
    run.record("seed", std::to_string(a.seed));
    const auto dirs = symmetry_protected_directions(run.model(), a.grid, a.tol);

    std::vector<ContourPoint> pts;
    if (a.samples > 0) {
        const Contour c = efc_extract(run.model(), a.omega, 128);
        for (const auto& l : c.polylines) pts.insert(pts.end(), l.points.begin(), l.points.end());
        std::mt19937 rng(a.seed);
        std::shuffle(pts.begin(), pts.end(), rng);
    }
    std::string csv = "dx,dy,guarantee,tested,conventional\n";
    for (const auto& d : dirs) {
        int tested = 0, conventional = 0;
        const Eigen::Vector2d perp = line_frame(d.direction).dual_perp().cast<double>();
        for (const auto& p : pts) {
            if (tested == a.samples) break;
            if (std::abs(p.v.dot(perp)) < 0.05 * p.v.norm()) continue; // grazing incidence
            ClassifyOptions opt;
            opt.omega = a.omega;
            ++tested;
            if (classify_scattering(run.model(), p.k, d.direction, opt).classification == Classification::Conventional)
                ++conventional;
        }
        csv += csv_row({d.direction.x(), d.direction.y(), d.guarantee, tested, conventional});
        std::cout << "direction=" << ivec_string(d.direction) << " guarantee=" << d.guarantee
                  << " conventional=" << conventional << "/" << tested << "\n";
    }
    if (dirs.empty()) std::cout << "no symmetry-protected directions\n";
    run.write("directions.csv", csv);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-Hermitian lattice simulator: EFCs, DDS, impurity-line scattering, wave packets, OBC spectra"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Run run;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--model", run.model_arg, "built-in model name or model file path");
        sub->add_option("--param", run.params, "parameter override name=value (repeatable)");
        sub->add_option("--out", run.out_arg, std::string("output directory (default $") + kOutEnv + " or ddsim-out)");
        sub->add_option("--threads", run.threads, "worker threads for grid evaluations")->capture_default_str();
    };

    BandsArgs bands_a;
    auto* bands_c = app.add_subcommand("bands", "Bloch spectrum on a k-grid");
    common(bands_c);
    bands_c->add_option("--grid", bands_a.grid)->capture_default_str();

    EfcArgs efc_a;
    auto* efc_c = app.add_subcommand("efc", "equal-frequency contour");
    common(efc_c);
    efc_c->add_option("--omega", efc_a.omega)->capture_default_str();
    efc_c->add_option("--grid", efc_a.grid)->capture_default_str();

    SpecfunArgs spec_a;
    auto* spec_c = app.add_subcommand("specfun", "spectral function on a k-grid");
    common(spec_c);
    spec_c->add_option("--omega", spec_a.omega)->capture_default_str();
    spec_c->add_option("--eta", spec_a.eta)->capture_default_str();
    spec_c->add_option("--grid", spec_a.grid)->capture_default_str();

    DdsArgs dds_a;
    auto* dds_c = app.add_subcommand("dds", "dynamical degeneracy splitting on the EFC");
    common(dds_c);
    dds_c->add_option("--omega", dds_a.omega)->capture_default_str();
    dds_c->add_option("--grid", dds_a.grid)->capture_default_str();
    dds_c->add_option("--tau", dds_a.tau)->capture_default_str();

    auto scatter_options = [](CLI::App* sub, ScatterArgs& s) {
        sub->add_option("--ki", s.ki, "incident momentum kx,ky (expressions such as pi/2 allowed)")->capture_default_str();
        sub->add_option("--direction", s.direction, "integer line direction p,q")->capture_default_str();
        sub->add_option("--omega", s.omega, "select the band with Re E nearest omega");
        sub->add_option("--eta-schedule", s.eta_schedule)->capture_default_str();
        sub->add_option("--kappa-threshold", s.kappa_threshold)->capture_default_str();
    };

    ScatterArgs scatter_a;
    auto* scatter_c = app.add_subcommand("scatter", "classify impurity-line scattering");
    common(scatter_c);
    scatter_options(scatter_c, scatter_a);

    ProfileArgs profile_a;
    auto* profile_c = app.add_subcommand("profile", "scattered-wave profile (single band)");
    common(profile_c);
    scatter_options(profile_c, profile_a.scatter);
    profile_c->add_option("--lambda", profile_a.lambda)->capture_default_str();
    profile_c->add_option("--rmin", profile_a.r_min)->capture_default_str();
    profile_c->add_option("--rmax", profile_a.r_max)->capture_default_str();

    WavepacketArgs wp_a;
    auto* wp_c = app.add_subcommand("wavepacket", "Gaussian wave packet hitting an impurity line");
    common(wp_c);
    wp_c->add_option("--size", wp_a.size, "square lattice side L")->capture_default_str();
    wp_c->add_option("--x0", wp_a.x0)->capture_default_str();
    wp_c->add_option("--y0", wp_a.y0)->capture_default_str();
    wp_c->add_option("--sigma", wp_a.sigma)->capture_default_str();
    wp_c->add_option("--ki", wp_a.ki)->capture_default_str();
    wp_c->add_option("--spinor", wp_a.spinor, "comma-separated components (default all ones)");
    wp_c->add_option("--lambda", wp_a.lambda)->capture_default_str();
    wp_c->add_option("--line", wp_a.line, "integer line direction p,q")->capture_default_str();
    wp_c->add_option("--origin", wp_a.origin, "a site on the line (default lattice centre)");
    wp_c->add_option("--times", wp_a.times, "snapshot times")->capture_default_str();
    wp_c->add_option("--dt", wp_a.dt, "time step (default min(0.02, 0.4/||H||_1))");
    wp_c->add_option("--strip", wp_a.strip, "half-width of the excluded strip around the line")->capture_default_str();
    wp_c->add_flag("--no-renormalize", wp_a.no_renormalize);

    ObcArgs obc_a;
    auto* obc_c = app.add_subcommand("obc", "open-boundary spectrum and frequency-resolved density");
    common(obc_c);
    obc_c->add_option("--geometry", obc_a.geometry)->capture_default_str();
    obc_c->add_option("--size", obc_a.size)->capture_default_str();
    obc_c->add_option("--omega", obc_a.omega)->capture_default_str();
    obc_c->add_option("--delta", obc_a.delta)->capture_default_str();
    obc_c->add_option("--edge-width", obc_a.edge_width)->capture_default_str();
    obc_c->add_option("--max-dim", obc_a.max_dim)->capture_default_str();

    SymmetryArgs sym_a;
    auto* sym_c = app.add_subcommand("symmetry", "symmetry-protected line directions");
    common(sym_c);
    sym_c->add_option("--grid", sym_a.grid)->capture_default_str();
    sym_c->add_option("--tol", sym_a.tol)->capture_default_str();
    sym_c->add_option("--omega", sym_a.omega)->capture_default_str();
    sym_c->add_option("--samples", sym_a.samples, "EFC momenta checked per direction (0 to skip)")->capture_default_str();
    sym_c->add_option("--seed", sym_a.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        run.command = app.get_subcommands().front()->get_name();
        if (bands_c->parsed()) run_bands(run, bands_a);
        else if (efc_c->parsed()) run_efc(run, efc_a);
        else if (spec_c->parsed()) run_specfun(run, spec_a);
        else if (dds_c->parsed()) run_dds(run, dds_a);
        else if (scatter_c->parsed()) run_scatter(run, scatter_a);
        else if (profile_c->parsed()) run_profile(run, profile_a);
        else if (wp_c->parsed()) run_wavepacket(run, wp_a);
        else if (obc_c->parsed()) run_obc(run, obc_a);
        else if (sym_c->parsed()) run_symmetry(run, sym_a);
        run.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
