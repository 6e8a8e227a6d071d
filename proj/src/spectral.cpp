#include "itop/spectral.hpp"

#include "itop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace itop {

namespace {

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& K) {
    if (K.cols() == 0) return K;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
    return qr.householderQ() * Eigen::MatrixXd::Identity(K.rows(), K.cols());
}

Eigen::MatrixXd kernel_columns(const SparseRationalMatrix& M) {
    std::vector<std::vector<Rational>> basis = M.kernel_basis();
    Eigen::MatrixXd K(M.cols(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (int i = 0; i < M.cols(); ++i) {
            K(i, static_cast<Eigen::Index>(j)) = basis[j][i].convert_to<double>();
        }
    }
    return K;
}

SpectrumEntry make_entry(const Eigen::MatrixXd& L, double a, double b, int degree, double tol) {
    SpectrumEntry e;
    e.a = a;
    e.b = b;
    e.degree = degree;
    e.eigenvalues = spectrum(L);
    e.nullity = spectral_nullity(e.eigenvalues, tol);
    e.gap = spectral_gap(e.eigenvalues, tol);
    return e;
}

}  // namespace

std::vector<double> spectrum(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols()) throw std::logic_error("spectrum of a non-square matrix");
    if (M.rows() == 0) return {};
    double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw std::logic_error("Laplacian asymmetric by " + std::to_string(asym));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::logic_error("eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::size_t spectral_nullity(const std::vector<double>& eigenvalues, double tol) {
    if (eigenvalues.empty()) return 0;
    double threshold = tol * std::max(1.0, eigenvalues.back());
    std::size_t count = 0;
    for (double ev : eigenvalues) {
        if (ev <= threshold) ++count;
    }
    return count;
}

double spectral_gap(const std::vector<double>& eigenvalues, double tol) {
    if (eigenvalues.empty()) return 0.0;
    double threshold = tol * std::max(1.0, eigenvalues.back());
    for (double ev : eigenvalues) {
        if (ev > threshold) return ev;
    }
    return 0.0;
}

LaplacianMatrix laplacian(const GradedBasis& basis, int p) {
    LaplacianMatrix out;
    out.p = p;
    const auto n = static_cast<Eigen::Index>(basis.count(p));
    if (n == 0) {
        out.matrix.resize(0, 0);
        return out;
    }
    Eigen::MatrixXd down = boundary_matrix(basis, p).to_double();
    Eigen::MatrixXd up = boundary_matrix(basis, p + 1).to_double();
    out.matrix = down.transpose() * down + up * up.transpose();
    return out;
}

PersistentLaplacian persistent_laplacian(const GradedBasis& basis, double a, double b, int p) {
    if (a > b) throw UsageError("persistent Laplacian requires a <= b");
    PersistentLaplacian out;
    out.p = p;
    out.a = a;
    out.b = b;

    const int np_a = static_cast<int>(basis.count_at(p, a));
    const int np_b = static_cast<int>(basis.count_at(p, b));
    const int npm1_a = static_cast<int>(basis.count_at(p - 1, a));
    const int np1_b = static_cast<int>(basis.count_at(p + 1, b));
    if (np_a == 0) {
        out.matrix.resize(0, 0);
        return out;
    }

    SparseRationalMatrix D_up = boundary_matrix(basis, p + 1).leading_block(np_b, np1_b);
    Eigen::MatrixXd D_ra = D_up.row_range(0, np_a).to_double();

    Eigen::MatrixXd up;
    if (np_a == np_b) {
        // No constraint rows: every chain at b qualifies.
        up = D_ra * D_ra.transpose();
    } else {
        SparseRationalMatrix D_out = D_up.row_range(np_a, np_b);
        Eigen::MatrixXd Z = orthonormal_columns(kernel_columns(D_out));
        Eigen::MatrixXd DZ = D_ra * Z;
        up = DZ * DZ.transpose();
    }

    Eigen::MatrixXd down_map = boundary_matrix(basis, p).leading_block(npm1_a, np_a).to_double();
    out.matrix = down_map.transpose() * down_map + up;
    return out;
}

SpectrumSeries gap_curve(const GradedBasis& basis, int p, const std::vector<double>& grid,
                         double tol) {
    SpectrumSeries series;
    series.degree = p;
    SparseRationalMatrix D_p = boundary_matrix(basis, p);
    SparseRationalMatrix D_up = boundary_matrix(basis, p + 1);
    for (double t : grid) {
        const int np = static_cast<int>(basis.count_at(p, t));
        const int npm1 = static_cast<int>(basis.count_at(p - 1, t));
        const int np1 = static_cast<int>(basis.count_at(p + 1, t));
        Eigen::MatrixXd L(np, np);
        if (np > 0) {
            Eigen::MatrixXd down = D_p.leading_block(npm1, np).to_double();
            Eigen::MatrixXd up = D_up.leading_block(np, np1).to_double();
            L = down.transpose() * down + up * up.transpose();
        }
        series.entries.push_back(make_entry(L, t, t, p, tol));
    }
    return series;
}

SpectrumSeries gap_curve_pairs(const GradedBasis& basis, int p,
                               const std::vector<std::pair<double, double>>& pairs, double tol) {
    SpectrumSeries series;
    series.degree = p;
    series.pairs_mode = true;
    for (const auto& [a, b] : pairs) {
        PersistentLaplacian pl = persistent_laplacian(basis, a, b, p);
        series.entries.push_back(make_entry(pl.matrix, a, b, p, tol));
    }
    return series;
}

SpectrumSeries classic_laplacian_curve(const FilteredComplex& K, int p,
                                       const std::vector<double>& grid, double tol) {
    return gap_curve(simplicial_basis(K, p + 1), p, grid, tol);
}

std::vector<double> auto_grid(const DistanceMatrix& dmat, const std::vector<std::vector<int>>& groups,
                              double max_scale) {
    std::vector<double> critical{0.0};
    for (const auto& group : groups) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                double d = dmat(group[i], group[j]);
                if (d <= max_scale) critical.push_back(d);
            }
        }
    }
    std::sort(critical.begin(), critical.end());
    critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

    std::vector<double> grid;
    for (std::size_t i = 0; i < critical.size(); ++i) {
        if (i) grid.push_back((critical[i - 1] + critical[i]) / 2.0);
        grid.push_back(critical[i]);
    }
    return grid;
}

}  // namespace itop
