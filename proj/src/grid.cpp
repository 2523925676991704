#include "fracpvar/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracpvar {
namespace {

std::uint64_t lattice_key(const std::array<int, 2>& g) {
    const auto lo = static_cast<std::uint64_t>(static_cast<std::uint32_t>(g[0]));
    const auto hi = static_cast<std::uint64_t>(static_cast<std::uint32_t>(g[1]));
    return (hi << 32) | lo;
}

} // namespace

std::shared_ptr<const Grid> Grid::build(double radius, double spacing, int dim) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("build_grid: dim must be 1 or 2");
    if (!(radius > 0.0) || !(spacing > 0.0))
        throw std::invalid_argument("build_grid: radius and spacing must be positive");
    const double ratio = radius / spacing;
    const long cells = std::lround(ratio);
    if (cells < 1 || std::abs(ratio - static_cast<double>(cells)) > 1e-9 * ratio)
        throw std::invalid_argument("build_grid: radius must be an integer multiple of spacing");

    auto grid = std::shared_ptr<Grid>(new Grid());
    grid->dim_ = dim;
    grid->radius_ = radius;
    grid->spacing_ = spacing;
    grid->cell_volume_ = dim == 1 ? spacing : spacing * spacing;

    const auto center = [spacing](long g) {
        return (static_cast<double>(g) + 0.5) * spacing;
    };

    if (dim == 1) {
        for (long g = -cells; g < cells; ++g) {
            grid->nodes_.push_back({center(g), 0.0});
            grid->lattice_.push_back({static_cast<int>(g), 0});
        }
    } else {
        // Keep the cell only when its farthest corner is inside the ball.
        for (long g1 = -cells; g1 < cells; ++g1) {
            for (long g0 = -cells; g0 < cells; ++g0) {
                const double cx = center(g0);
                const double cy = center(g1);
                const double corner0 = std::abs(cx) + 0.5 * spacing;
                const double corner1 = std::abs(cy) + 0.5 * spacing;
                if (corner0 * corner0 + corner1 * corner1 <= radius * radius) {
                    grid->nodes_.push_back({cx, cy});
                    grid->lattice_.push_back({static_cast<int>(g0), static_cast<int>(g1)});
                }
            }
        }
        if (grid->nodes_.empty())
            throw std::invalid_argument("build_grid: no cell fits inside the ball; refine spacing");
    }

    if (grid->nodes_.size() > 4096) {
        std::ostringstream what;
        what << "build_grid: " << grid->nodes_.size()
             << " nodes exceed the dense-kernel cap of 4096";
        throw std::invalid_argument(what.str());
    }

    grid->index_.reserve(grid->nodes_.size());
    for (std::size_t i = 0; i < grid->lattice_.size(); ++i)
        grid->index_.emplace(lattice_key(grid->lattice_[i]), i);
    return grid;
}

double Grid::node_norm(std::size_t i) const {
    const auto& x = nodes_[i];
    return dim_ == 1 ? std::abs(x[0]) : std::sqrt(x[0] * x[0] + x[1] * x[1]);
}

double Grid::distance(std::size_t i, std::size_t j) const {
    const auto& a = nodes_[i];
    const auto& b = nodes_[j];
    if (dim_ == 1) return std::abs(a[0] - b[0]);
    const double d0 = a[0] - b[0];
    const double d1 = a[1] - b[1];
    return std::sqrt(d0 * d0 + d1 * d1);
}

std::size_t Grid::find(const std::array<int, 2>& lattice_coords) const {
    const auto it = index_.find(lattice_key(lattice_coords));
    return it == index_.end() ? npos : it->second;
}

} // namespace fracpvar
