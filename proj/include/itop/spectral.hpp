#pragma once

#include "itop/homology.hpp"
#include "itop/interaction.hpp"

#include <Eigen/Dense>

#include <vector>

namespace itop {

inline constexpr double kZeroEigTol = 1e-8;

/// Combinatorial Laplacian on the degree-p interaction cells, the cell basis
/// taken as orthonormal.
struct LaplacianMatrix {
    int p = 0;
    Eigen::MatrixXd matrix;
};

/// Persistent Laplacian on the degree-p cells at parameter a, built from the
/// inclusion into the complex at parameter b. At a = b it coincides with the
/// ordinary Laplacian.
struct PersistentLaplacian {
    int p = 0;
    double a = 0.0;
    double b = 0.0;
    Eigen::MatrixXd matrix;
};

struct SpectrumEntry {
    double a = 0.0;   // equal to b in snapshot mode
    double b = 0.0;
    int degree = 0;
    std::size_t nullity = 0;
    double gap = 0.0;                  // smallest eigenvalue above tolerance, 0 if none
    std::vector<double> eigenvalues;   // ascending
};

struct SpectrumSeries {
    int degree = 0;
    bool pairs_mode = false;
    std::vector<SpectrumEntry> entries;
};

// Eigenvalues in ascending order. Throws std::logic_error if the matrix is
// asymmetric beyond 1e-12.
std::vector<double> spectrum(const Eigen::MatrixXd& M);

// An eigenvalue counts as zero iff it is <= tol * max(1, largest eigenvalue).
std::size_t spectral_nullity(const std::vector<double>& eigenvalues, double tol = kZeroEigTol);
double spectral_gap(const std::vector<double>& eigenvalues, double tol = kZeroEigTol);

// L_p = (d_p)^* d_p + d_{p+1} (d_{p+1})^* on the degree-p cells; the degree-0
// Laplacian has only the up-term. Absent degrees give a 0x0 matrix.
LaplacianMatrix laplacian(const GradedBasis& basis, int p);

// Persistent Laplacian for a <= b. The up-term restricts d_{p+1} at scale b to
// the chains whose boundary lies in the degree-p span at scale a: with the
// rows of d_{p+1}^b split into R_a (birth <= a) and the rest, Z is an
// orthonormal basis of the null space of the trailing row block and the
// up-term is (D_{R_a} Z)(D_{R_a} Z)^T. The down-term is (d_p^a)^* d_p^a. The
// basis may extend beyond scale b; cells beyond b are ignored.
PersistentLaplacian persistent_laplacian(const GradedBasis& basis, double a, double b, int p);

// Snapshot spectra of L_p across the grid, reusing one global boundary matrix
// pair and truncating to leading blocks per grid value.
SpectrumSeries gap_curve(const GradedBasis& basis, int p, const std::vector<double>& grid,
                         double tol = kZeroEigTol);

// Persistent-pair spectra of Delta_p^{a,b} for each (a, b) with a <= b.
SpectrumSeries gap_curve_pairs(const GradedBasis& basis, int p,
                               const std::vector<std::pair<double, double>>& pairs,
                               double tol = kZeroEigTol);

// Ordinary simplicial Laplacian spectra of a single complex across the grid.
SpectrumSeries classic_laplacian_curve(const FilteredComplex& K, int p,
                                       const std::vector<double>& grid,
                                       double tol = kZeroEigTol);

// Critical values of the interaction filtration (0 and all within-group
// pairwise distances <= max_scale), sorted and distinct, plus the midpoints of
// consecutive values. Gap curves are piecewise constant between critical
// values, so this grid captures every regime.
std::vector<double> auto_grid(const DistanceMatrix& dmat, const std::vector<std::vector<int>>& groups,
                              double max_scale);

}  // namespace itop
