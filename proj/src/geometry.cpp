#include "ddsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace ddsim {

namespace {

long long key(int x, int y) { return (static_cast<long long>(y) << 32) ^ static_cast<unsigned int>(x); }

constexpr int neighbours[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

} // namespace

LatticeGeometry::LatticeGeometry(Shape shape, int size, std::vector<Eigen::Vector2i> sites)
    : shape_(shape), size_(size), sites_(std::move(sites)) {
    if (sites_.empty()) throw std::invalid_argument("LatticeGeometry: no sites");
    std::sort(sites_.begin(), sites_.end(), [](const auto& a, const auto& b) {
        return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
    });
    sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());

    int xmin = sites_[0].x(), xmax = xmin, ymin = sites_[0].y(), ymax = ymin;
    for (int i = 0; i < num_sites(); ++i) {
        lookup_.emplace(key(sites_[i].x(), sites_[i].y()), i);
        xmin = std::min(xmin, sites_[i].x());
        xmax = std::max(xmax, sites_[i].x());
        ymin = std::min(ymin, sites_[i].y());
        ymax = std::max(ymax, sites_[i].y());
    }
    width_ = xmax - xmin + 1;
    height_ = ymax - ymin + 1;

    boundary_flags_.assign(sites_.size(), false);
    boundary_distance_.assign(sites_.size(), -1);
    std::deque<int> queue;
    for (int i = 0; i < num_sites(); ++i) {
        for (const auto& d : neighbours) {
            if (!index_of(sites_[i].x() + d[0], sites_[i].y() + d[1])) {
                boundary_flags_[i] = true;
                break;
            }
        }
        if (boundary_flags_[i]) {
            boundary_.push_back(i);
            boundary_distance_[i] = 0;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        for (const auto& d : neighbours) {
            const auto j = index_of(sites_[i].x() + d[0], sites_[i].y() + d[1]);
            if (j && boundary_distance_[*j] < 0) {
                boundary_distance_[*j] = boundary_distance_[i] + 1;
                queue.push_back(*j);
            }
        }
    }
}

LatticeGeometry LatticeGeometry::square(int lx, int ly) {
    if (lx < 1 || ly < 1) throw std::invalid_argument("square geometry needs positive sizes");
    std::vector<Eigen::Vector2i> sites;
    sites.reserve(static_cast<std::size_t>(lx) * ly);
    for (int y = 0; y < ly; ++y)
        for (int x = 0; x < lx; ++x) sites.emplace_back(x, y);
    return LatticeGeometry(Shape::Square, std::max(lx, ly), std::move(sites));
}

LatticeGeometry LatticeGeometry::diamond(int l) {
    if (l < 1) throw std::invalid_argument("diamond geometry needs a positive size");
    const double c = l / 2.0;
    std::vector<Eigen::Vector2i> sites;
    for (int y = 0; y <= l; ++y)
        for (int x = 0; x <= l; ++x)
            if (std::abs(x - c) + std::abs(y - c) <= c + 1e-12) sites.emplace_back(x, y);
    return LatticeGeometry(Shape::Diamond, l, std::move(sites));
}

LatticeGeometry LatticeGeometry::polygon(const std::vector<Eigen::Vector2d>& vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon needs at least three vertices");
    Eigen::Vector2d lo = vertices[0], hi = vertices[0];
    for (const auto& v : vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    // Point-in-polygon via winding number; points on an edge count as inside.
    auto inside = [&](const Eigen::Vector2d& p) {
        int winding = 0;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const Eigen::Vector2d& a = vertices[i];
            const Eigen::Vector2d& b = vertices[(i + 1) % vertices.size()];
            const double cross = (b - a).x() * (p - a).y() - (b - a).y() * (p - a).x();
            if (std::abs(cross) < 1e-12 && (p - a).dot(p - b) <= 1e-12) return true;
            if (a.y() <= p.y()) {
                if (b.y() > p.y() && cross > 0) ++winding;
            } else if (b.y() <= p.y() && cross < 0) {
                --winding;
            }
        }
        return winding != 0;
    };
    std::vector<Eigen::Vector2i> sites;
    for (int y = static_cast<int>(std::ceil(lo.y())); y <= static_cast<int>(std::floor(hi.y())); ++y)
        for (int x = static_cast<int>(std::ceil(lo.x())); x <= static_cast<int>(std::floor(hi.x())); ++x)
            if (inside(Eigen::Vector2d(x, y))) sites.emplace_back(x, y);
    const int extent = static_cast<int>(std::ceil(std::max(hi.x() - lo.x(), hi.y() - lo.y())));
    return LatticeGeometry(Shape::Polygon, extent, std::move(sites));
}

std::optional<int> LatticeGeometry::index_of(int x, int y) const {
    const auto it = lookup_.find(key(x, y));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::string LatticeGeometry::to_csv() const {
    std::ostringstream out;
    out << "index,x,y,is_boundary\n";
    for (int i = 0; i < num_sites(); ++i)
        out << i << ',' << sites_[i].x() << ',' << sites_[i].y() << ',' << (boundary_flags_[i] ? 1 : 0) << '\n';
    return out.str();
}

} // namespace ddsim
