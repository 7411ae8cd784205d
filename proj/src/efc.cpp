#include "ddsim/efc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <Eigen/LU>

#include "ddsim/csv.hpp"
#include "ddsim/error.hpp"
#include "ddsim/parallel.hpp"

namespace ddsim {

using cd = std::complex<double>;
using std::numbers::pi;

CharSplit char_split(const BlochModel& model, const Eigen::Vector2d& k, double omega) {
    const int q = model.dim();
    if (q > 4) throw InputError("char_split supports at most 4 bands");
    const Eigen::MatrixXcd h = bloch_matrix(model, k);
    std::vector<CLaurent> m(q * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            m[a * q + b] = CLaurent::constant(h(a, b) - (a == b ? omega : 0.0));
            if (a == b) m[a * q + b] += CLaurent::monomial(1, cd(0, -1));
        }
    const CLaurent f = determinant(m, q);
    RPoly::Coeffs re = RPoly::Coeffs::Zero(q + 1), im = RPoly::Coeffs::Zero(q + 1);
    for (int p = 0; p <= q; ++p) {
        re(p) = f.coeff(p).real();
        im(p) = f.coeff(p).imag();
    }
    CharSplit out{RPoly(0, re), RPoly(0, im), q};
    out.f_r.trim();
    out.f_i.trim();
    return out;
}

double resultant_F(const BlochModel& model, double omega, const Eigen::Vector2d& k) {
    const CharSplit s = char_split(model, k, omega);
    if (s.f_r.is_zero() && s.f_i.is_zero()) throw NumericalError("resultant_F: both polynomials vanish");
    return resultant(s.f_r, s.degree, s.f_i, s.degree);
}

std::size_t Contour::num_points() const {
    std::size_t n = 0;
    for (const auto& p : polylines) n += p.points.size();
    return n;
}

namespace {

double wrap(double x) { return x - 2 * pi * std::floor((x + pi) / (2 * pi)); }

double band_offset(const BlochModel& model, const Eigen::Vector2d& k, int band, double omega) {
    return sorted_eigenvalues(bloch_matrix(model, k))(band).real() - omega;
}

// Zero of G along a -> b, given opposite signs at the ends.
Eigen::Vector2d bisect(const BlochModel& model, int band, double omega, Eigen::Vector2d a, Eigen::Vector2d b,
                       double ga) {
    double best_g = std::abs(ga);
    Eigen::Vector2d best = a;
    for (int it = 0; it < 64; ++it) {
        const Eigen::Vector2d mid = 0.5 * (a + b);
        const double gm = band_offset(model, mid, band, omega);
        if (std::abs(gm) < best_g) {
            best_g = std::abs(gm);
            best = mid;
        }
        if (gm == 0.0) break;
        if ((gm > 0) == (ga > 0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    if (best_g >= 1e-10) throw NumericalError("efc_extract: crossing refinement did not converge");
    return best;
}

struct Grid {
    int n;
    int q;
    std::vector<Eigen::VectorXcd> energies; // index i * n + j

    Grid(const BlochModel& model, int n_) : n(n_), q(model.dim()), energies(n_ * n_) {
        parallel_for(n * n, [&](int idx) {
            const Eigen::Vector2d k(bz_coordinate(idx / n, n), bz_coordinate(idx % n, n));
            energies[idx] = sorted_eigenvalues(bloch_matrix(model, k));
        });
    }

    double g(int i, int j, int band, double omega) const {
        return energies[((i % n + n) % n) * n + (j % n + n) % n](band).real() - omega;
    }
};

} // namespace

Contour efc_extract(const BlochModel& model, double omega, int grid_n) {
    if (grid_n < 32) throw InputError("efc_extract: grid_n must be at least 32");
    const int n = grid_n;
    const double h = 2 * pi / n;
    const Grid grid(model, n);
    Contour out;
    out.omega = omega;
    out.grid_n = n;

    for (int band = 0; band < grid.q; ++band) {
        auto positive = [&](int i, int j) { return grid.g(i, j, band, omega) > 0; };
        auto node = [&](int i, int j, bool horizontal) {
            return (((i % n + n) % n) * n + (j % n + n) % n) * 2 + (horizontal ? 1 : 0);
        };

        // refined crossing for every sign-changing edge
        std::map<int, Eigen::Vector2d> crossing;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (bool horizontal : {true, false}) {
                    const int i2 = horizontal ? i + 1 : i;
                    const int j2 = horizontal ? j : j + 1;
                    if (positive(i, j) == positive(i2, j2)) continue;
                    const Eigen::Vector2d a(bz_coordinate(i, n), bz_coordinate(j, n));
                    const Eigen::Vector2d b = a + (horizontal ? Eigen::Vector2d(h, 0) : Eigen::Vector2d(0, h));
                    const Eigen::Vector2d z = bisect(model, band, omega, a, b, grid.g(i, j, band, omega));
                    crossing[node(i, j, horizontal)] = {wrap(z.x()), wrap(z.y())};
                }
        if (crossing.empty()) continue;

        std::map<int, std::vector<int>> adjacent;
        auto link = [&](int a, int b) {
            adjacent[a].push_back(b);
            adjacent[b].push_back(a);
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const bool s[4] = {positive(i, j), positive(i + 1, j), positive(i + 1, j + 1), positive(i, j + 1)};
                // edges: bottom, right, top, left
                const int e[4] = {node(i, j, true), node(i + 1, j, false), node(i, j + 1, true), node(i, j, false)};
                std::vector<int> cut;
                for (int c = 0; c < 4; ++c)
                    if (s[c] != s[(c + 1) % 4]) cut.push_back(c);
                if (cut.size() == 2) {
                    link(e[cut[0]], e[cut[1]]);
                } else if (cut.size() == 4) {
                    const double center = 0.25 * (grid.g(i, j, band, omega) + grid.g(i + 1, j, band, omega) +
                                                  grid.g(i + 1, j + 1, band, omega) + grid.g(i, j + 1, band, omega));
                    if ((center > 0) == s[0]) {
                        link(e[0], e[1]);
                        link(e[2], e[3]);
                    } else {
                        link(e[3], e[0]);
                        link(e[1], e[2]);
                    }
                }
            }

        std::set<int> visited;
        for (const auto& [start, unused] : crossing) {
            if (visited.count(start)) continue;
            std::vector<int> cycle{start};
            visited.insert(start);
            int prev = -1, cur = start;
            for (;;) {
                const auto& nb = adjacent.at(cur);
                int next = -1;
                for (int cand : nb)
                    if (cand != prev && !visited.count(cand)) {
                        next = cand;
                        break;
                    }
                if (next < 0) break;
                visited.insert(next);
                cycle.push_back(next);
                prev = cur;
                cur = next;
            }

            std::vector<ContourPoint> pts;
            for (int id : cycle) {
                const Eigen::Vector2d k = crossing.at(id);
                const Eigen::VectorXcd e = sorted_eigenvalues(bloch_matrix(model, k));
                pts.push_back({k, e(band).imag(), group_velocity(model, omega, k)});
            }

            auto jump = [](const ContourPoint& a, const ContourPoint& b) {
                return std::abs(a.k.x() - b.k.x()) > pi || std::abs(a.k.y() - b.k.y()) > pi;
            };
            std::vector<std::size_t> cuts;
            for (std::size_t p = 0; p < pts.size(); ++p)
                if (jump(pts[p], pts[(p + 1) % pts.size()])) cuts.push_back(p);
            if (cuts.empty()) {
                out.polylines.push_back({std::move(pts), true, band});
                continue;
            }
            for (std::size_t c = 0; c < cuts.size(); ++c) {
                const std::size_t from = cuts[c] + 1;
                const std::size_t to = cuts[(c + 1) % cuts.size()];
                Polyline piece{{}, false, band};
                for (std::size_t p = from;; ++p) {
                    piece.points.push_back(pts[p % pts.size()]);
                    if (p % pts.size() == to) break;
                }
                out.polylines.push_back(std::move(piece));
            }
        }
    }
    return out;
}

double spectral_function(const BlochModel& model, double omega, const Eigen::Vector2d& k, double eta) {
    if (!(eta > 0)) throw InputError("spectral_function: eta must be positive");
    const Eigen::MatrixXcd h = bloch_matrix(model, k);
    const Eigen::MatrixXcd g =
        (cd(omega, eta) * Eigen::MatrixXcd::Identity(h.rows(), h.cols()) - h).partialPivLu().inverse();
    return -g.trace().imag();
}

Eigen::Vector2d group_velocity(const BlochModel& model, double omega, const Eigen::Vector2d& k) {
    constexpr double step = 1e-5;
    const Eigen::Vector2d ex(step, 0), ey(0, step);
    const double dw = (resultant_F(model, omega + step, k) - resultant_F(model, omega - step, k)) / (2 * step);
    if (std::abs(dw) < 1e-12) throw NumericalError("group_velocity: singular contour (dF/domega ~ 0)");
    const double dx = (resultant_F(model, omega, k + ex) - resultant_F(model, omega, k - ex)) / (2 * step);
    const double dy = (resultant_F(model, omega, k + ey) - resultant_F(model, omega, k - ey)) / (2 * step);
    return {-dx / dw, -dy / dw};
}

DdsReport dds_report(const Contour& contour, double tau) {
    DdsReport r;
    r.omega = contour.omega;
    if (contour.num_points() == 0) {
        r.empty_contour = true;
        return r;
    }
    r.im_min = std::numeric_limits<double>::infinity();
    r.im_max = -r.im_min;
    for (const auto& line : contour.polylines) {
        PolylineStats s{line.points.size(), r.im_min, r.im_max, 0.0};
        for (const auto& p : line.points) {
            s.im_min = std::min(s.im_min, p.im_e);
            s.im_max = std::max(s.im_max, p.im_e);
            s.im_mean += p.im_e;
        }
        s.im_mean /= static_cast<double>(std::max<std::size_t>(1, s.points));
        r.im_min = std::min(r.im_min, s.im_min);
        r.im_max = std::max(r.im_max, s.im_max);
        r.polylines.push_back(s);
    }
    r.im_spread = r.im_max - r.im_min;
    r.dds_present = r.im_spread > tau;
    return r;
}

DdsReport dds_report(const BlochModel& model, double omega, int grid_n, double tau) {
    return dds_report(efc_extract(model, omega, grid_n), tau);
}

EfcCrossCheck efc_cross_check(const BlochModel& model, double omega, int grid_n) {
    const int n = grid_n;
    const Grid grid(model, n);
    std::vector<double> f(n * n);
    parallel_for(n * n, [&](int idx) {
        f[idx] = resultant_F(model, omega, {bz_coordinate(idx / n, n), bz_coordinate(idx % n, n)});
    });
    auto fpos = [&](int i, int j) { return f[((i % n + n) % n) * n + (j % n + n) % n] > 0; };

    EfcCrossCheck out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (bool horizontal : {true, false}) {
                const int i2 = horizontal ? i + 1 : i;
                const int j2 = horizontal ? j : j + 1;
                const GridEdge e{i, j, horizontal};
                int crossed = 0;
                for (int band = 0; band < grid.q; ++band)
                    crossed += (grid.g(i, j, band, omega) > 0) != (grid.g(i2, j2, band, omega) > 0);
                const bool res = fpos(i, j) != fpos(i2, j2);
                if (res) out.resultant_edges.push_back(e);
                if (crossed % 2) out.band_edges.push_back(e);
                if (crossed) out.union_edges.push_back(e);
                if (res && !crossed) out.spurious.push_back(e);
            }
    return out;
}

std::string contour_csv(const Contour& contour) {
    std::string out = "kx,ky,imE,vx,vy,polyline_id\n";
    for (std::size_t id = 0; id < contour.polylines.size(); ++id)
        for (const auto& p : contour.polylines[id].points)
            out += csv_row({p.k.x(), p.k.y(), p.im_e, p.v.x(), p.v.y(), id});
    return out;
}

std::string spectral_grid_csv(const BlochModel& model, double omega, double eta, int grid_n) {
    const int n = grid_n;
    std::vector<double> a(n * n);
    parallel_for(n * n, [&](int idx) {
        a[idx] = spectral_function(model, omega, {bz_coordinate(idx / n, n), bz_coordinate(idx % n, n)}, eta);
    });
    std::string out = "kx,ky,A\n";
    for (int idx = 0; idx < n * n; ++idx)
        out += csv_row({bz_coordinate(idx / n, n), bz_coordinate(idx % n, n), a[idx]});
    return out;
}

} // namespace ddsim
