#pragma once

#include <memory>
#include <vector>

#include "fracpvar/grid.hpp"

namespace fracpvar {

// Discrete function on a grid, zero outside the ball by convention.
struct Field {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(std::shared_ptr<const Grid> g)
        : grid(std::move(g)), values(grid->size(), 0.0) {}
    Field(std::shared_ptr<const Grid> g, std::vector<double> v);

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    Field positive_part() const; // max(u, 0) nodewise
    Field negative_part() const; // max(-u, 0) nodewise

    double max_abs() const;
};

double dot(const Field& a, const Field& b);

Field& axpy(Field& y, double alpha, const Field& x); // y += alpha * x
Field scaled(const Field& u, double alpha);

// Copies values onto a finer-radius grid with the same spacing; new nodes get
// zero. Throws std::invalid_argument when the grids do not nest.
Field zero_extend(const Field& u, std::shared_ptr<const Grid> target);

} // namespace fracpvar
