#pragma once

#include "itop/interaction.hpp"

#include <limits>
#include <vector>

namespace itop {

enum class Field { Q, F2 };

/// Betti numbers indexed by degree.
using BettiVector = std::vector<std::size_t>;

/// Half-open persistence interval [birth, death); death is +infinity for
/// classes alive at the end of the filtration.
struct Bar {
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();

    bool finite() const { return death != std::numeric_limits<double>::infinity(); }
};

/// Bars of one filtration, grouped by degree. Zero-length bars are kept
/// internally (they record the full cell pairing) but excluded from bars().
class Barcode {
public:
    Barcode() = default;
    explicit Barcode(std::vector<std::vector<Bar>> by_degree);

    int max_degree() const { return static_cast<int>(by_degree_.size()) - 1; }

    // Bars of positive length, sorted by (birth, death); infinite deaths last.
    std::vector<Bar> bars(int degree) const;

    // Every bar, including zero-length ones.
    const std::vector<Bar>& all_bars(int degree) const;

private:
    std::vector<std::vector<Bar>> by_degree_;
};

// beta_p = dim IC_p - rank B_p - rank B_{p+1}, from exact ranks over Q or
// mod-2 ranks over F2. Entries cover degrees 0..basis.max_degree(); the top
// entry is meaningful only if the complex carries no cells above it, so
// callers wanting beta_p enumerate the basis through degree p+1.
BettiVector betti(const GradedBasis& basis, Field field = Field::Q);

// Persistence of the filtration carried by the basis births: column reduction
// of the global boundary matrix with columns ordered by (birth, degree, lex).
Barcode persistent_barcode(const GradedBasis& basis, Field field = Field::Q);

// beta_p^{a,b} for a <= b: the rank of H_p(a) -> H_p(b), i.e. the number of
// degree-p bars with birth <= a and death > b.
std::size_t persistent_betti(const Barcode& bc, double a, double b, int p);

/// Wu characteristic report for a self-interaction pair {K, K}.
struct WuReport {
    long long omega = 0;                    // alternating sum of pair counts
    std::vector<std::size_t> pair_counts;   // interacting pairs per total dimension
    long long betti_alternating_sum = 0;

    bool consistent() const { return omega == betti_alternating_sum; }
};

// Wu characteristic from a two-factor self-interaction basis: pairs (sigma,
// tau) with sigma, tau in K and nonempty intersection, counted by total
// dimension, alternating sum cross-checked against the interaction Betti
// numbers. The basis must be complete (no degree or scale truncation) and
// swap-symmetric; otherwise an unsupported-input error is thrown.
WuReport wu_characteristic(const GradedBasis& basis, const BettiVector& betti);

// Exact bottleneck distance between the degree-p diagrams of two barcodes.
// Bars with infinite death match only among themselves; a count mismatch
// yields +infinity.
double bottleneck_distance(const Barcode& a, const Barcode& b, int p);

}  // namespace itop
