#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace ddsim {

enum class Shape { Square, Diamond, Polygon };

/// Finite set of square-lattice sites, ordered row-major by (y, x).
/// A site is on the boundary when one of its four nearest neighbours is
/// missing.
class LatticeGeometry {
public:
    static LatticeGeometry square(int lx, int ly);
    static LatticeGeometry square(int l) { return square(l, l); }

    /// {(x, y) : |x - L/2| + |y - L/2| <= L/2}.
    static LatticeGeometry diamond(int l);

    /// Sites inside or on the closed polygon (vertices in order).
    static LatticeGeometry polygon(const std::vector<Eigen::Vector2d>& vertices);

    Shape shape() const { return shape_; }
    int size() const { return size_; }
    int width() const { return width_; }
    int height() const { return height_; }
    int num_sites() const { return static_cast<int>(sites_.size()); }

    const std::vector<Eigen::Vector2i>& sites() const { return sites_; }
    const Eigen::Vector2i& site(int index) const { return sites_[index]; }
    std::optional<int> index_of(int x, int y) const;

    bool is_boundary(int index) const { return boundary_flags_[index]; }
    const std::vector<int>& boundary() const { return boundary_; }

    /// Nearest-neighbour graph distance of each site to the boundary set.
    const std::vector<int>& boundary_distance() const { return boundary_distance_; }

    /// index,x,y,is_boundary
    std::string to_csv() const;

private:
    LatticeGeometry(Shape shape, int size, std::vector<Eigen::Vector2i> sites);

    Shape shape_;
    int size_;
    int width_ = 0;
    int height_ = 0;
    std::vector<Eigen::Vector2i> sites_;
    std::unordered_map<long long, int> lookup_;
    std::vector<bool> boundary_flags_;
    std::vector<int> boundary_;
    std::vector<int> boundary_distance_;
};

} // namespace ddsim
