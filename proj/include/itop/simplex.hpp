#pragma once

#include "itop/geometry.hpp"

#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace itop {

/// Abstract simplex: strictly increasing list of point ids.
struct Simplex {
    std::vector<int> vertices;

    Simplex() = default;
    explicit Simplex(std::vector<int> verts);
    Simplex(std::initializer_list<int> verts) : Simplex(std::vector<int>(verts)) {}

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    bool contains(int v) const;

    // Face obtained by deleting the j-th smallest vertex.
    Simplex facet(int j) const;

    bool operator==(const Simplex& o) const { return vertices == o.vertices; }
    bool operator<(const Simplex& o) const;  // lexicographic on vertex lists
};

// Signed boundary: sum_j (-1)^j (s with j-th smallest vertex removed).
// Empty for dim 0.
std::vector<std::pair<int, Simplex>> boundary_chain(const Simplex& s);

/// Simplicial complex with per-simplex filtration values, grouped by
/// dimension. Closed under faces; birth(face) <= birth(simplex); within each
/// dimension simplices are sorted by (birth, lexicographic order).
class FilteredComplex {
public:
    using Cell = std::pair<Simplex, double>;

    // Validates closure and monotonicity. With add_missing_faces, absent faces
    // are inserted with the minimum birth over their cofaces.
    static FilteredComplex from_cells(std::vector<Cell> cells, bool add_missing_faces = false);

    int max_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<Cell>& simplices(int dim) const;
    std::size_t size() const;

    bool contains(const Simplex& s) const { return births_.count(s) > 0; }
    double birth(const Simplex& s) const;

    std::vector<int> vertex_ids() const;  // sorted

    // Simplices with birth <= scale only.
    FilteredComplex truncated(double scale) const;

private:
    FilteredComplex() = default;
    std::vector<std::vector<Cell>> by_dim_;
    std::map<Simplex, double> births_;
};

// Vietoris-Rips filtration on the given point ids: every simplex with
// dim <= max_dim and diameter <= max_scale, birth = max pairwise distance
// (0 for vertices). Membership at scale eps is closed: birth <= eps.
FilteredComplex vr_filtration(const std::vector<int>& ids, const DistanceMatrix& dmat,
                              int max_dim, double max_scale);

}  // namespace itop
