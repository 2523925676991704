#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <memory>
#include <unordered_map>
#include <vector>

namespace fracpvar {

// Cell-centered mesh of the ball B(0, radius). Node centers sit on the
// lattice (g + 1/2) * spacing, so grids with a common spacing share node
// coordinates bitwise and nested radii give nested node sets. Nodes stay
// strictly inside the ball; in 2d a cell is kept only when all of it lies in
// the ball, which keeps every exterior weight finite.
class Grid {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    // radius must be a positive integer multiple of spacing; dim is 1 or 2.
    static std::shared_ptr<const Grid> build(double radius, double spacing, int dim);

    int dim() const { return dim_; }
    double radius() const { return radius_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return nodes_.size(); }

    const std::array<double, 2>& node(std::size_t i) const { return nodes_[i]; }
    const std::array<int, 2>& lattice(std::size_t i) const { return lattice_[i]; }
    double volume(std::size_t) const { return cell_volume_; }
    double cell_volume() const { return cell_volume_; }

    double node_norm(std::size_t i) const;
    double distance(std::size_t i, std::size_t j) const;

    // Index of the node at the given lattice coordinates, npos if absent.
    std::size_t find(const std::array<int, 2>& lattice_coords) const;

private:
    Grid() = default;

    int dim_ = 1;
    double radius_ = 0.0;
    double spacing_ = 0.0;
    double cell_volume_ = 0.0;
    std::vector<std::array<double, 2>> nodes_;
    std::vector<std::array<int, 2>> lattice_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

} // namespace fracpvar
