#pragma once

#include "itop/rational_matrix.hpp"
#include "itop/simplex.hpp"

#include <string>
#include <vector>

namespace itop {

/// Product cell s1 x ... x sn with a nonempty common vertex set. Total degree
/// is the sum of factor dimensions; birth is the max factor birth.
struct InteractionCell {
    std::vector<Simplex> factors;
    double birth = 0.0;

    int degree() const;
    std::vector<int> common_vertices() const;  // sorted intersection of factors

    bool operator==(const InteractionCell& o) const { return factors == o.factors; }
    bool operator<(const InteractionCell& o) const;  // lexicographic on factors
};

/// Interaction cells grouped by total degree. Within each degree cells are
/// sorted by (birth, lexicographic factor order), so the cells present at
/// scale t form a prefix of each degree's list and boundary matrices restrict
/// to leading blocks.
class GradedBasis {
public:
    GradedBasis() = default;
    explicit GradedBasis(std::vector<std::vector<InteractionCell>> by_degree);

    int max_degree() const { return static_cast<int>(by_degree_.size()) - 1; }
    const std::vector<InteractionCell>& cells(int degree) const;
    std::size_t count(int degree) const { return cells(degree).size(); }
    std::size_t total() const;

    // Position of the cell within its degree; -1 if absent.
    int find(int degree, const InteractionCell& cell) const;

    // Number of degree-p cells with birth <= scale (a prefix by the sort
    // invariant).
    std::size_t count_at(int degree, double scale) const;

    GradedBasis truncated(double scale) const;

    // One line per cell: "p=<degree> birth=<value> (<f1>|<f2>|...)".
    std::string dump() const;

private:
    std::vector<std::vector<InteractionCell>> by_degree_;
};

// All interaction cells of the given family with total degree <= max_degree
// and birth <= max_scale. Factors are drawn from the respective complexes and
// must share at least one vertex.
GradedBasis enumerate_cells(const std::vector<FilteredComplex>& complexes, int max_degree,
                            double max_scale = std::numeric_limits<double>::infinity());

// Single-factor basis: the simplicial chain complex of K itself.
GradedBasis simplicial_basis(const FilteredComplex& K, int max_degree);

// Boundary matrix from degree-p cells (columns) to degree-(p-1) cells (rows).
// The differential acts factorwise with sign (-1)^(d_1+...+d_{i-1}) on factor
// i; terms whose factors lose their common vertex are dropped. For p = 0 the
// matrix has zero rows.
SparseRationalMatrix boundary_matrix(const GradedBasis& basis, int p);

// Checks B_{p-1} * B_p = 0 in exact arithmetic for every degree; throws
// std::logic_error on failure.
void verify_chain_complex(const GradedBasis& basis);

}  // namespace itop
