#include "fracpvar/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fracpvar {

Field::Field(std::shared_ptr<const Grid> g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size())
        throw std::invalid_argument("Field: value count does not match grid node count");
}

Field Field::positive_part() const {
    Field out(grid);
    for (std::size_t i = 0; i < values.size(); ++i)
        out.values[i] = values[i] > 0.0 ? values[i] : 0.0;
    return out;
}

Field Field::negative_part() const {
    Field out(grid);
    for (std::size_t i = 0; i < values.size(); ++i)
        out.values[i] = values[i] < 0.0 ? -values[i] : 0.0;
    return out;
}

double Field::max_abs() const {
    double best = 0.0;
    for (double v : values) best = std::max(best, std::abs(v));
    return best;
}

double dot(const Field& a, const Field& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: field sizes differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a.values[i] * b.values[i];
    return acc;
}

Field& axpy(Field& y, double alpha, const Field& x) {
    if (y.size() != x.size())
        throw std::invalid_argument("axpy: field sizes differ");
    for (std::size_t i = 0; i < y.size(); ++i) y.values[i] += alpha * x.values[i];
    return y;
}

Field scaled(const Field& u, double alpha) {
    Field out = u;
    for (double& v : out.values) v *= alpha;
    return out;
}

Field zero_extend(const Field& u, std::shared_ptr<const Grid> target) {
    const Grid& source = *u.grid;
    if (source.dim() != target->dim() || source.spacing() != target->spacing())
        throw std::invalid_argument("zero_extend: grids must share dimension and spacing");
    if (source.radius() > target->radius())
        throw std::invalid_argument("zero_extend: target grid must not be smaller");
    Field out(target);
    for (std::size_t i = 0; i < source.size(); ++i) {
        const std::size_t j = target->find(source.lattice(i));
        if (j == Grid::npos)
            throw std::invalid_argument("zero_extend: node sets do not nest");
        out.values[j] = u.values[i];
    }
    return out;
}

} // namespace fracpvar
