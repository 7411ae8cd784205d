#include "ddsim/real_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace ddsim {

SparseMatrixXcd real_space_operator(const BlochModel& model, const LatticeGeometry& geometry,
                                    const Eigen::VectorXcd& potential, const RealSpaceOptions& options) {
    const int q = model.dim();
    const int n = geometry.num_sites();
    if (potential.size() != 0 && potential.size() != n)
        throw std::invalid_argument("real_space_operator: potential must have one value per site");
    if (options.periodic && geometry.shape() != Shape::Square)
        throw std::invalid_argument("real_space_operator: periodic wrapping needs a square geometry");

    const int range = model.max_range();
    if (options.warnings && (geometry.width() <= 2 * range || geometry.height() <= 2 * range))
        options.warnings->push_back("geometry smaller than the hopping range " + std::to_string(range));

    std::vector<std::pair<Displacement, Eigen::MatrixXcd>> blocks;
    for (const Displacement& l : model.displacements()) blocks.emplace_back(l, model.hopping(l));

    const int w = geometry.width();
    const int h = geometry.height();
    const Eigen::Vector2i origin = geometry.site(0); // row-major order: smallest y first
    int xmin = origin.x();
    for (const auto& s : geometry.sites()) xmin = std::min(xmin, s.x());

    std::vector<Eigen::Triplet<std::complex<double>>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) * blocks.size() * q * q + n * q);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2i& r = geometry.site(i);
        for (const auto& [l, t] : blocks) {
            int x = r.x() + l.x;
            int y = r.y() + l.y;
            if (options.periodic) {
                x = xmin + ((x - xmin) % w + w) % w;
                y = origin.y() + ((y - origin.y()) % h + h) % h;
            }
            const auto j = geometry.index_of(x, y);
            if (!j) continue;
            for (int a = 0; a < q; ++a)
                for (int b = 0; b < q; ++b)
                    if (t(a, b) != std::complex<double>(0)) triplets.emplace_back(i * q + a, *j * q + b, t(a, b));
        }
        if (potential.size() != 0 && potential(i) != std::complex<double>(0))
            for (int a = 0; a < q; ++a) triplets.emplace_back(i * q + a, i * q + a, potential(i));
    }
    SparseMatrixXcd op(n * q, n * q);
    op.setFromTriplets(triplets.begin(), triplets.end());
    op.makeCompressed();
    return op;
}

double one_norm(const SparseMatrixXcd& h) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(h.cols());
    for (int r = 0; r < h.outerSize(); ++r)
        for (SparseMatrixXcd::InnerIterator it(h, r); it; ++it) col(it.col()) += std::abs(it.value());
    return col.size() ? col.maxCoeff() : 0.0;
}

} // namespace ddsim
