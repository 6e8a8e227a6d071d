#include "itop/interaction.hpp"

#include "itop/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace itop {

namespace {

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void sort_degree_lists(std::vector<std::vector<InteractionCell>>& by_degree) {
    for (auto& cells : by_degree) {
        std::sort(cells.begin(), cells.end(), [](const InteractionCell& a, const InteractionCell& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            return a < b;
        });
    }
    while (!by_degree.empty() && by_degree.back().empty()) by_degree.pop_back();
}

}  // namespace

int InteractionCell::degree() const {
    int d = 0;
    for (const auto& f : factors) d += f.dim();
    return d;
}

std::vector<int> InteractionCell::common_vertices() const {
    if (factors.empty()) return {};
    std::vector<int> common = factors[0].vertices;
    for (std::size_t i = 1; i < factors.size(); ++i) {
        common = intersect_sorted(common, factors[i].vertices);
    }
    return common;
}

bool InteractionCell::operator<(const InteractionCell& o) const {
    return std::lexicographical_compare(factors.begin(), factors.end(), o.factors.begin(),
                                        o.factors.end());
}

GradedBasis::GradedBasis(std::vector<std::vector<InteractionCell>> by_degree)
    : by_degree_(std::move(by_degree)) {
    sort_degree_lists(by_degree_);
}

const std::vector<InteractionCell>& GradedBasis::cells(int degree) const {
    static const std::vector<InteractionCell> empty;
    if (degree < 0 || degree >= static_cast<int>(by_degree_.size())) return empty;
    return by_degree_[degree];
}

std::size_t GradedBasis::total() const {
    std::size_t n = 0;
    for (const auto& cells : by_degree_) n += cells.size();
    return n;
}

int GradedBasis::find(int degree, const InteractionCell& cell) const {
    const auto& list = cells(degree);
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i] == cell) return static_cast<int>(i);
    }
    return -1;
}

std::size_t GradedBasis::count_at(int degree, double scale) const {
    const auto& list = cells(degree);
    auto it = std::upper_bound(list.begin(), list.end(), scale,
                               [](double s, const InteractionCell& c) { return s < c.birth; });
    return static_cast<std::size_t>(it - list.begin());
}

GradedBasis GradedBasis::truncated(double scale) const {
    std::vector<std::vector<InteractionCell>> trimmed;
    trimmed.reserve(by_degree_.size());
    for (int p = 0; p <= max_degree(); ++p) {
        const auto& list = cells(p);
        trimmed.emplace_back(list.begin(), list.begin() + count_at(p, scale));
    }
    return GradedBasis(std::move(trimmed));
}

std::string GradedBasis::dump() const {
    std::ostringstream out;
    for (int p = 0; p <= max_degree(); ++p) {
        for (const auto& cell : cells(p)) {
            out << "p=" << p << " birth=" << cell.birth << " (";
            for (std::size_t i = 0; i < cell.factors.size(); ++i) {
                if (i) out << "|";
                const auto& vs = cell.factors[i].vertices;
                for (std::size_t j = 0; j < vs.size(); ++j) {
                    if (j) out << ",";
                    out << vs[j];
                }
            }
            out << ")\n";
        }
    }
    return out.str();
}

GradedBasis enumerate_cells(const std::vector<FilteredComplex>& complexes, int max_degree,
                            double max_scale) {
    if (complexes.empty()) throw UsageError("interaction complex needs at least one factor");
    if (max_degree < 0) throw UsageError("max_degree must be nonnegative");
    const std::size_t n = complexes.size();

    // Pivot vertices: vertices present in every factor complex. Each cell is
    // generated once, at the pivot equal to the minimum of its common vertex
    // set.
    std::vector<int> pivots = complexes[0].vertex_ids();
    for (std::size_t i = 1; i < n; ++i) {
        pivots = intersect_sorted(pivots, complexes[i].vertex_ids());
    }

    // cofaces[i][v]: simplices of complexes[i] containing v, dim <= max_degree,
    // birth <= max_scale.
    std::vector<std::map<int, std::vector<const FilteredComplex::Cell*>>> cofaces(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int d = 0; d <= std::min(max_degree, complexes[i].max_dim()); ++d) {
            for (const auto& cell : complexes[i].simplices(d)) {
                if (cell.second > max_scale) continue;
                for (int v : cell.first.vertices) cofaces[i][v].push_back(&cell);
            }
        }
    }

    std::vector<std::vector<InteractionCell>> by_degree(max_degree + 1);
    std::vector<const FilteredComplex::Cell*> chosen(n);

    // Depth-first product over factors, pruning on degree and birth.
    auto extend = [&](auto&& self, int pivot, std::size_t i, int degree, double birth) -> void {
        if (i == n) {
            InteractionCell cell;
            cell.factors.reserve(n);
            for (const auto* c : chosen) cell.factors.push_back(c->first);
            auto common = cell.common_vertices();
            if (common.front() != pivot) return;  // generated at a smaller pivot already
            cell.birth = birth;
            by_degree[degree].push_back(std::move(cell));
            return;
        }
        auto it = cofaces[i].find(pivot);
        if (it == cofaces[i].end()) return;
        for (const auto* c : it->second) {
            int deg = degree + c->first.dim();
            if (deg > max_degree) continue;
            double b = std::max(birth, c->second);
            if (b > max_scale) continue;
            chosen[i] = c;
            self(self, pivot, i + 1, deg, b);
        }
    };
    for (int v : pivots) extend(extend, v, 0, 0, 0.0);

    sort_degree_lists(by_degree);
    return GradedBasis(std::move(by_degree));
}

GradedBasis simplicial_basis(const FilteredComplex& K, int max_degree) {
    std::vector<std::vector<InteractionCell>> by_degree(max_degree + 1);
    for (int d = 0; d <= std::min(max_degree, K.max_dim()); ++d) {
        for (const auto& [s, b] : K.simplices(d)) {
            InteractionCell cell;
            cell.factors = {s};
            cell.birth = b;
            by_degree[d].push_back(std::move(cell));
        }
    }
    return GradedBasis(std::move(by_degree));
}

SparseRationalMatrix boundary_matrix(const GradedBasis& basis, int p) {
    if (p < 0) throw UsageError("boundary degree must be nonnegative");
    const auto& domain = basis.cells(p);
    const std::size_t rows = basis.count(p - 1);
    SparseRationalMatrix B(static_cast<int>(rows), static_cast<int>(domain.size()));
    if (p == 0) return B;

    // Row lookup by cell identity.
    std::map<InteractionCell, int> row_of;
    {
        const auto& codomain = basis.cells(p - 1);
        for (std::size_t r = 0; r < codomain.size(); ++r) {
            row_of.emplace(codomain[r], static_cast<int>(r));
        }
    }

    for (std::size_t col = 0; col < domain.size(); ++col) {
        const auto& cell = domain[col];
        std::map<int, Rational> entries;
        int prefix_sign = 1;  // (-1)^(d_1+...+d_{i-1})
        for (std::size_t i = 0; i < cell.factors.size(); ++i) {
            for (const auto& [sgn, face] : boundary_chain(cell.factors[i])) {
                InteractionCell term = cell;
                term.factors[i] = face;
                if (term.common_vertices().empty()) continue;  // falls into the ideal D_*
                auto it = row_of.find(term);
                if (it == row_of.end()) {
                    throw std::logic_error("boundary term missing from basis");
                }
                entries[it->second] += Rational(prefix_sign * sgn);
            }
            if (cell.factors[i].dim() % 2 == 1) prefix_sign = -prefix_sign;
        }
        std::vector<std::pair<int, Rational>> column;
        for (auto& [r, v] : entries) {
            if (v != 0) column.emplace_back(r, v);
        }
        B.set_column(static_cast<int>(col), std::move(column));
    }
    return B;
}

void verify_chain_complex(const GradedBasis& basis) {
    SparseRationalMatrix prev = boundary_matrix(basis, 0);
    for (int p = 1; p <= basis.max_degree(); ++p) {
        SparseRationalMatrix cur = boundary_matrix(basis, p);
        if (!prev.multiply(cur).is_zero()) {
            throw std::logic_error("d^2 != 0 at degree " + std::to_string(p));
        }
        prev = std::move(cur);
    }
}

}  // namespace itop
