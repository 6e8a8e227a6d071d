#include "itop/homology.hpp"

#include "itop/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace itop {

namespace {

using QColumn = std::vector<std::pair<int, Rational>>;  // sorted by row

QColumn axpy(const QColumn& x, const Rational& c, const QColumn& y) {
    QColumn out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, c * y[j].second);
            ++j;
        } else {
            Rational v = x[i].second + c * y[j].second;
            if (v != 0) out.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

std::vector<int> xor_rows(const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> out;
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(),
                                  std::back_inserter(out));
    return out;
}

bool odd_entry(const Rational& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(v) != 1) throw std::logic_error("non-integer boundary entry");
    return numerator(v) % 2 != 0;
}

std::size_t rank_f2(const SparseRationalMatrix& M) {
    std::vector<std::vector<int>> reduced;
    std::map<int, std::size_t> owner;  // low row -> index into reduced
    std::size_t rank = 0;
    for (int j = 0; j < M.cols(); ++j) {
        std::vector<int> col;
        for (const auto& [r, v] : M.column(j)) {
            if (odd_entry(v)) col.push_back(r);
        }
        while (!col.empty()) {
            auto it = owner.find(col.back());
            if (it == owner.end()) break;
            col = xor_rows(col, reduced[it->second]);
        }
        if (!col.empty()) {
            owner.emplace(col.back(), reduced.size());
            reduced.push_back(std::move(col));
            ++rank;
        }
    }
    return rank;
}

std::size_t boundary_rank(const GradedBasis& basis, int p, Field field) {
    SparseRationalMatrix B = boundary_matrix(basis, p);
    return field == Field::Q ? B.rank() : rank_f2(B);
}

}  // namespace

Barcode::Barcode(std::vector<std::vector<Bar>> by_degree) : by_degree_(std::move(by_degree)) {
    for (auto& bars : by_degree_) {
        std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            return a.death < b.death;
        });
    }
}

std::vector<Bar> Barcode::bars(int degree) const {
    std::vector<Bar> out;
    for (const Bar& bar : all_bars(degree)) {
        if (bar.death > bar.birth) out.push_back(bar);
    }
    return out;
}

const std::vector<Bar>& Barcode::all_bars(int degree) const {
    static const std::vector<Bar> empty;
    if (degree < 0 || degree >= static_cast<int>(by_degree_.size())) return empty;
    return by_degree_[degree];
}

BettiVector betti(const GradedBasis& basis, Field field) {
    BettiVector out;
    if (basis.max_degree() < 0) return out;
    std::size_t rank_next = boundary_rank(basis, 0, field);  // zero by construction
    for (int p = 0; p <= basis.max_degree(); ++p) {
        std::size_t rank_p = rank_next;
        rank_next = p < basis.max_degree() ? boundary_rank(basis, p + 1, field) : 0;
        out.push_back(basis.count(p) - rank_p - rank_next);
    }
    return out;
}

Barcode persistent_barcode(const GradedBasis& basis, Field field) {
    struct CellRef {
        double birth;
        int degree;
        int idx;  // position within its degree
    };
    std::vector<CellRef> order;
    for (int p = 0; p <= basis.max_degree(); ++p) {
        const auto& cells = basis.cells(p);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            order.push_back({cells[i].birth, p, static_cast<int>(i)});
        }
    }
    std::sort(order.begin(), order.end(), [](const CellRef& a, const CellRef& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.idx < b.idx;
    });

    // global_of[p][idx] = position in the global column order. Within one
    // degree the map is increasing, so sparse columns stay sorted.
    std::vector<std::vector<int>> global_of(basis.max_degree() + 1);
    for (int p = 0; p <= basis.max_degree(); ++p) {
        global_of[p].resize(basis.count(p));
    }
    for (std::size_t g = 0; g < order.size(); ++g) {
        global_of[order[g].degree][order[g].idx] = static_cast<int>(g);
    }

    std::vector<SparseRationalMatrix> B;
    for (int p = 0; p <= basis.max_degree(); ++p) B.push_back(boundary_matrix(basis, p));

    const std::size_t n = order.size();
    std::vector<QColumn> reduced_q(n);
    std::vector<std::vector<int>> reduced_f2(n);
    std::map<int, std::size_t> owner;        // low -> column that owns it
    std::vector<int> killed_by(n, -1);       // positive cell -> destroyer column
    std::vector<bool> negative(n, false);

    for (std::size_t g = 0; g < n; ++g) {
        const CellRef& cell = order[g];
        int low = -1;
        if (field == Field::Q) {
            QColumn col;
            for (const auto& [r, v] : B[cell.degree].column(cell.idx)) {
                col.emplace_back(global_of[cell.degree - 1][r], v);
            }
            while (!col.empty()) {
                auto it = owner.find(col.back().first);
                if (it == owner.end()) break;
                const QColumn& other = reduced_q[it->second];
                Rational factor = -col.back().second / other.back().second;
                col = axpy(col, factor, other);
            }
            if (!col.empty()) low = col.back().first;
            reduced_q[g] = std::move(col);
        } else {
            std::vector<int> col;
            for (const auto& [r, v] : B[cell.degree].column(cell.idx)) {
                if (odd_entry(v)) col.push_back(global_of[cell.degree - 1][r]);
            }
            while (!col.empty()) {
                auto it = owner.find(col.back());
                if (it == owner.end()) break;
                col = xor_rows(col, reduced_f2[it->second]);
            }
            if (!col.empty()) low = col.back();
            reduced_f2[g] = std::move(col);
        }
        if (low >= 0) {
            negative[g] = true;
            owner.emplace(low, g);
            killed_by[low] = static_cast<int>(g);
        }
    }

    std::vector<std::vector<Bar>> by_degree(std::max(basis.max_degree() + 1, 0));
    for (std::size_t g = 0; g < n; ++g) {
        if (negative[g]) continue;
        Bar bar;
        bar.birth = order[g].birth;
        if (killed_by[g] >= 0) bar.death = order[killed_by[g]].birth;
        by_degree[order[g].degree].push_back(bar);
    }
    return Barcode(std::move(by_degree));
}

std::size_t persistent_betti(const Barcode& bc, double a, double b, int p) {
    if (a > b) throw UsageError("persistent Betti requires a <= b");
    std::size_t count = 0;
    for (const Bar& bar : bc.all_bars(p)) {
        if (bar.birth <= a && bar.death > b) ++count;
    }
    return count;
}

WuReport wu_characteristic(const GradedBasis& basis, const BettiVector& betti) {
    for (int p = 0; p <= basis.max_degree(); ++p) {
        for (const auto& cell : basis.cells(p)) {
            if (cell.factors.size() != 2) {
                throw UsageError("Wu characteristic requires a two-factor interaction");
            }
            InteractionCell swapped;
            swapped.factors = {cell.factors[1], cell.factors[0]};
            swapped.birth = cell.birth;
            if (basis.find(p, swapped) < 0) {
                throw UsageError("Wu characteristic requires identical factors (K, K)");
            }
        }
    }
    WuReport report;
    for (int p = 0; p <= basis.max_degree(); ++p) {
        report.pair_counts.push_back(basis.count(p));
        long long sign = p % 2 == 0 ? 1 : -1;
        report.omega += sign * static_cast<long long>(basis.count(p));
    }
    for (std::size_t i = 0; i < betti.size(); ++i) {
        long long sign = i % 2 == 0 ? 1 : -1;
        report.betti_alternating_sum += sign * static_cast<long long>(betti[i]);
    }
    return report;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimal max |birth difference| over perfect matchings of two equal-size
// multisets of births: sorted order is optimal.
double infinite_bar_cost(std::vector<double> x, std::vector<double> y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double cost = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cost = std::max(cost, std::abs(x[i] - y[i]));
    }
    return cost;
}

struct BottleneckGraph {
    // Left nodes: bars of A, then diagonal slots for bars of B.
    // Right nodes: bars of B, then diagonal slots for bars of A.
    std::size_t na = 0, nb = 0;
    std::vector<std::vector<double>> pair_cost;  // na x nb
    std::vector<double> half_a, half_b;

    bool edge(std::size_t l, std::size_t r, double c) const {
        bool left_bar = l < na;
        bool right_bar = r < nb;
        if (left_bar && right_bar) return pair_cost[l][r] <= c;
        if (left_bar) return r - nb == l && half_a[l] <= c;
        if (right_bar) return l - na == r && half_b[r] <= c;
        return true;  // diagonal slot to diagonal slot
    }

    bool try_augment(std::size_t l, double c, std::vector<int>& match_right,
                     std::vector<bool>& visited) const {
        for (std::size_t r = 0; r < nb + na; ++r) {
            if (visited[r] || !edge(l, r, c)) continue;
            visited[r] = true;
            if (match_right[r] < 0 ||
                try_augment(static_cast<std::size_t>(match_right[r]), c, match_right, visited)) {
                match_right[r] = static_cast<int>(l);
                return true;
            }
        }
        return false;
    }

    bool feasible(double c) const {
        std::vector<int> match_right(nb + na, -1);
        for (std::size_t l = 0; l < na + nb; ++l) {
            std::vector<bool> visited(nb + na, false);
            if (!try_augment(l, c, match_right, visited)) return false;
        }
        return true;
    }
};

}  // namespace

double bottleneck_distance(const Barcode& a, const Barcode& b, int p) {
    std::vector<Bar> fa, fb;
    std::vector<double> ia, ib;
    for (const Bar& bar : a.bars(p)) {
        if (bar.finite()) {
            fa.push_back(bar);
        } else {
            ia.push_back(bar.birth);
        }
    }
    for (const Bar& bar : b.bars(p)) {
        if (bar.finite()) {
            fb.push_back(bar);
        } else {
            ib.push_back(bar.birth);
        }
    }

    if (ia.size() != ib.size()) return kInf;
    double inf_cost = infinite_bar_cost(ia, ib);

    BottleneckGraph g;
    g.na = fa.size();
    g.nb = fb.size();
    g.pair_cost.assign(g.na, std::vector<double>(g.nb, 0.0));
    std::vector<double> candidates{0.0, inf_cost};
    for (std::size_t i = 0; i < g.na; ++i) {
        for (std::size_t j = 0; j < g.nb; ++j) {
            double c = std::max(std::abs(fa[i].birth - fb[j].birth),
                                std::abs(fa[i].death - fb[j].death));
            g.pair_cost[i][j] = c;
            candidates.push_back(std::max(c, inf_cost));
        }
    }
    for (const Bar& bar : fa) {
        g.half_a.push_back((bar.death - bar.birth) / 2.0);
        candidates.push_back(std::max(g.half_a.back(), inf_cost));
    }
    for (const Bar& bar : fb) {
        g.half_b.push_back((bar.death - bar.birth) / 2.0);
        candidates.push_back(std::max(g.half_b.back(), inf_cost));
    }

    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                    [&](double c) { return c < inf_cost; }),
                     candidates.end());

    // Smallest candidate cost admitting a perfect matching.
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (g.feasible(candidates[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return candidates[lo];
}

}  // namespace itop
