#include "itop/spectral.hpp"

#include "itop/geometry.hpp"
#include "itop/homology.hpp"
#include "itop/interaction.hpp"
#include "itop/simplex.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

using namespace itop;

namespace {

const double kRt2 = std::sqrt(2.0);
const double kRt3 = std::sqrt(3.0);

FilteredComplex static_complex(const std::vector<std::vector<int>>& top_cells) {
    std::vector<FilteredComplex::Cell> cells;
    for (const auto& verts : top_cells) cells.emplace_back(Simplex(verts), 0.0);
    return FilteredComplex::from_cells(std::move(cells), /*add_missing_faces=*/true);
}

InteractionCell cell2(std::vector<int> a, std::vector<int> b) {
    return InteractionCell{{Simplex(std::move(a)), Simplex(std::move(b))}, 0.0};
}

GradedBasis paths_basis() {
    return enumerate_cells({static_complex({{0, 1}, {1, 2}}), static_complex({{1, 2}, {2, 3}})},
                           3);
}

GradedBasis squares_basis() {
    return enumerate_cells({static_complex({{0, 1}, {0, 2}, {1, 3}, {2, 3}}),
                            static_complex({{2, 3}, {2, 4}, {3, 5}, {4, 5}})},
                           3);
}

struct ExampleData {
    DistanceMatrix dmat;
    std::vector<std::vector<int>> groups;
    GradedBasis basis;
    Barcode barcode;
};

ExampleData example_data() {
    PointCloud cloud = load_cloud(std::string(ITOP_DATA_DIR) + "/example33.csv", "auto");
    DistanceMatrix dmat = distance_matrix(cloud);
    auto groups = select_groups(cloud, GroupingSpec::parse("L,S;S,R"));
    std::vector<FilteredComplex> factors;
    for (const auto& ids : groups) factors.push_back(vr_filtration(ids, dmat, 3, 1.5));
    GradedBasis basis = enumerate_cells(factors, 3, 1.5);
    Barcode bc = persistent_barcode(basis);
    return {std::move(dmat), std::move(groups), std::move(basis), std::move(bc)};
}

std::vector<int> positions(const GradedBasis& basis, int p,
                           const std::vector<InteractionCell>& order) {
    std::vector<int> perm;
    for (const auto& c : order) {
        int i = basis.find(p, c);
        REQUIRE(i >= 0);
        perm.push_back(i);
    }
    return perm;
}

void check_entries(const Eigen::MatrixXd& M, const std::vector<int>& perm,
                   const std::vector<std::vector<double>>& expected) {
    REQUIRE(M.rows() == static_cast<int>(perm.size()));
    for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = 0; j < perm.size(); ++j) {
            CHECK(M(perm[i], perm[j]) == expected[i][j]);
        }
    }
}

// Whether M equals expected after relabeling cells (a permutation) and
// flipping cell orientations (a sign per cell): s_i s_j M(pi_i, pi_j) =
// E(i, j). Rows are matched by diagonal and off-diagonal magnitude profile,
// then all sign vectors are scanned; n stays small enough for both searches.
bool signed_permutation_equivalent(const Eigen::MatrixXd& M,
                                   const std::vector<std::vector<double>>& expected) {
    const int n = static_cast<int>(expected.size());
    if (M.rows() != n || M.cols() != n) return false;
    auto profile = [&](auto&& get, int r) {
        std::vector<double> offs;
        for (int c = 0; c < n; ++c) {
            if (c != r) offs.push_back(std::abs(get(r, c)));
        }
        std::sort(offs.begin(), offs.end());
        return offs;
    };
    auto mget = [&](int r, int c) { return M(r, c); };
    auto eget = [&](int r, int c) { return expected[r][c]; };

    std::vector<int> pi(n, -1);
    std::vector<bool> used(n, false);
    auto signs_work = [&] {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            bool ok = true;
            for (int r = 0; r < n && ok; ++r) {
                double sr = (mask >> r & 1) ? -1.0 : 1.0;
                for (int c = 0; c < n && ok; ++c) {
                    double sc = (mask >> c & 1) ? -1.0 : 1.0;
                    if (sr * sc * M(pi[r], pi[c]) != expected[r][c]) ok = false;
                }
            }
            if (ok) return true;
        }
        return false;
    };
    auto place = [&](auto&& self, int i) -> bool {
        if (i == n) return signs_work();
        for (int cand = 0; cand < n; ++cand) {
            if (used[cand]) continue;
            if (M(cand, cand) != expected[i][i]) continue;
            if (profile(mget, cand) != profile(eget, i)) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                if (std::abs(M(cand, pi[j])) != std::abs(expected[i][j])) ok = false;
            }
            if (!ok) continue;
            used[cand] = true;
            pi[i] = cand;
            if (self(self, i + 1)) return true;
            used[cand] = false;
            pi[i] = -1;
        }
        return false;
    };
    return place(place, 0);
}

void check_spectrum(const std::vector<double>& got, const std::vector<double>& expected) {
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i] == Catch::Approx(expected[i]).margin(1e-9));
    }
}

}  // namespace

TEST_CASE("nullity and gap use a relative zero threshold") {
    CHECK(spectral_nullity({}) == 0);
    CHECK(spectral_gap({}) == 0.0);
    CHECK(spectral_nullity({0.0, 0.0}) == 2);
    CHECK(spectral_gap({0.0, 0.0}) == 0.0);
    CHECK(spectral_nullity({1e-10, 5.0}) == 1);
    CHECK(spectral_gap({1e-10, 5.0}) == 5.0);
    CHECK(spectral_nullity({1e-10}) == 1);
    CHECK(spectral_nullity({1e-4, 5.0}) == 0);
    CHECK(spectral_gap({1e-4, 5.0}) == 1e-4);
    CHECK(spectral_nullity({1e-4, 5.0}, 1e-3) == 1);
}

TEST_CASE("spectrum rejects asymmetric matrices") {
    Eigen::MatrixXd M(2, 2);
    M << 0.0, 1.0, 0.5, 0.0;
    CHECK_THROWS_AS(spectrum(M), std::logic_error);
}

TEST_CASE("laplacians of the overlapping paths") {
    GradedBasis basis = paths_basis();

    LaplacianMatrix L0 = laplacian(basis, 0);
    check_entries(L0.matrix,
                  positions(basis, 0, {cell2({1}, {1}), cell2({2}, {2})}),
                  {{3, 0}, {0, 3}});

    std::vector<InteractionCell> edge_order{cell2({1}, {1, 2}), cell2({2}, {1, 2}),
                                            cell2({2}, {2, 3}), cell2({0, 1}, {1}),
                                            cell2({1, 2}, {1}), cell2({1, 2}, {2})};
    LaplacianMatrix L1 = laplacian(basis, 1);
    check_entries(L1.matrix, positions(basis, 1, edge_order),
                  {{3, -1, 0, 0, 0, 1},
                   {-1, 2, -1, 0, 1, 0},
                   {0, -1, 2, 0, 0, 0},
                   {0, 0, 0, 2, -1, 0},
                   {0, 1, 0, -1, 2, -1},
                   {1, 0, 0, 0, -1, 3}});

    std::vector<InteractionCell> square_order{cell2({0, 1}, {1, 2}), cell2({1, 2}, {1, 2}),
                                              cell2({1, 2}, {2, 3})};
    LaplacianMatrix L2 = laplacian(basis, 2);
    check_entries(L2.matrix, positions(basis, 2, square_order),
                  {{2, -1, 0}, {-1, 4, -1}, {0, -1, 2}});

    check_spectrum(spectrum(L0.matrix), {3, 3});
    check_spectrum(spectrum(L1.matrix), {0, 3 - kRt3, 2, 3, 3, 3 + kRt3});
    check_spectrum(spectrum(L2.matrix), {3 - kRt3, 2, 3 + kRt3});
}

TEST_CASE("laplacians of the overlapping squares") {
    GradedBasis basis = squares_basis();

    LaplacianMatrix L0 = laplacian(basis, 0);
    check_entries(L0.matrix,
                  positions(basis, 0, {cell2({2}, {2}), cell2({3}, {3})}),
                  {{4, 0}, {0, 4}});

    // Known-good displays of these Laplacians use their own cell order and
    // orientation; the entries must agree up to that relabeling.
    LaplacianMatrix L1 = laplacian(basis, 1);
    CHECK(signed_permutation_equivalent(L1.matrix,
                                        {{3, 1, 0, 0, 0, 0, 0, 0},
                                         {1, 3, -1, 0, 0, 0, -1, 0},
                                         {0, -1, 3, -1, 0, -1, 0, 0},
                                         {0, 0, -1, 3, 0, 0, 0, 0},
                                         {0, 0, 0, 0, 3, 0, 1, 0},
                                         {0, 0, -1, 0, 0, 3, -1, -1},
                                         {0, -1, 0, 0, 1, -1, 3, 0},
                                         {0, 0, 0, 0, 0, -1, 0, 3}}));

    LaplacianMatrix L2 = laplacian(basis, 2);
    CHECK(signed_permutation_equivalent(L2.matrix,
                                        {{2, -1, 0, 1, 0, 0, 0},
                                         {-1, 2, 0, 0, 1, 0, 0},
                                         {0, 0, 2, 1, 0, -1, 0},
                                         {1, 0, 1, 4, -1, 0, -1},
                                         {0, 1, 0, -1, 2, 0, 0},
                                         {0, 0, -1, 0, 0, 2, 1},
                                         {0, 0, 0, -1, 0, 1, 2}}));

    check_spectrum(spectrum(L0.matrix), {4, 4});
    check_spectrum(spectrum(L1.matrix),
                   {2 - kRt2, 2, 2, 4 - kRt2, 2 + kRt2, 4, 4, 4 + kRt2});
    check_spectrum(spectrum(L2.matrix),
                   {0, 2 - kRt2, 2, 2, 4 - kRt2, 2 + kRt2, 4 + kRt2});
}

TEST_CASE("laplacian nullity equals the betti number") {
    GradedBasis paths = paths_basis();
    BettiVector pb = betti(paths);
    for (int p = 0; p < paths.max_degree(); ++p) {
        CHECK(spectral_nullity(spectrum(laplacian(paths, p).matrix)) == pb[p]);
    }

    GradedBasis squares = squares_basis();
    BettiVector sb = betti(squares);
    for (int p = 0; p < squares.max_degree(); ++p) {
        CHECK(spectral_nullity(spectrum(laplacian(squares, p).matrix)) == sb[p]);
    }

    std::mt19937 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        auto inst = oracles::random_vr_instance(rng, 2, 4, 1);
        BettiVector bv = betti(inst.basis);
        for (int p = 0; p < inst.basis.max_degree(); ++p) {
            CHECK(spectral_nullity(spectrum(laplacian(inst.basis, p).matrix)) == bv[p]);
        }
    }
}

TEST_CASE("laplacians are positive semidefinite") {
    std::mt19937 rng(4321);
    for (int trial = 0; trial < 10; ++trial) {
        auto inst = oracles::random_vr_instance(rng, 2 + trial % 2, 4, 1);
        for (int p = 0; p <= inst.basis.max_degree(); ++p) {
            auto eigs = spectrum(laplacian(inst.basis, p).matrix);
            for (double x : eigs) CHECK(x >= -1e-9);
        }
    }
}

TEST_CASE("absent degrees give empty laplacians") {
    GradedBasis basis = paths_basis();
    LaplacianMatrix L = laplacian(basis, 7);
    CHECK(L.matrix.rows() == 0);
    CHECK(L.matrix.cols() == 0);
    CHECK(spectrum(L.matrix).empty());
}

TEST_CASE("persistent laplacian at equal scales is the ordinary one") {
    ExampleData ex = example_data();
    for (double t : {0.0, 0.5, 1.0, 1.2, kRt2}) {
        GradedBasis snap = ex.basis.truncated(t);
        for (int p = 0; p < 3; ++p) {
            PersistentLaplacian P = persistent_laplacian(ex.basis, t, t, p);
            LaplacianMatrix L = laplacian(snap, p);
            REQUIRE(P.matrix.rows() == L.matrix.rows());
            if (P.matrix.rows() > 0) {
                CHECK((P.matrix - L.matrix).cwiseAbs().maxCoeff() <= 1e-12);
            }
        }
    }
}

TEST_CASE("persistent laplacian nullity equals persistent betti") {
    ExampleData ex = example_data();
    const double grid[] = {0.0, 0.5, 1.0, 1.2, kRt2};
    for (double a : grid) {
        for (double b : grid) {
            if (a > b) continue;
            for (int p = 0; p < 3; ++p) {
                PersistentLaplacian P = persistent_laplacian(ex.basis, a, b, p);
                std::size_t nullity = spectral_nullity(spectrum(P.matrix));
                CHECK(nullity == persistent_betti(ex.barcode, a, b, p));
            }
        }
    }
}

TEST_CASE("persistent up-chains have exact zero boundary") {
    ExampleData ex = example_data();
    const double grid[] = {0.0, 1.0, kRt2};
    for (double a : grid) {
        for (double b : grid) {
            if (a > b) continue;
            for (int p = 0; p < 3; ++p) {
                const int np_a = static_cast<int>(ex.basis.count_at(p, a));
                const int np_b = static_cast<int>(ex.basis.count_at(p, b));
                const int np1_b = static_cast<int>(ex.basis.count_at(p + 1, b));
                const int npm1_b = static_cast<int>(ex.basis.count_at(p - 1, b));
                SparseRationalMatrix D =
                    boundary_matrix(ex.basis, p + 1).leading_block(np_b, np1_b);
                SparseRationalMatrix Dp =
                    boundary_matrix(ex.basis, p).leading_block(npm1_b, np_b);
                SparseRationalMatrix R_out = D.row_range(np_a, np_b);
                for (const auto& z : R_out.kernel_basis()) {
                    SparseRationalMatrix zcol(np1_b, 1);
                    std::vector<SparseRationalMatrix::Entry> col;
                    for (int r = 0; r < np1_b; ++r) {
                        if (z[r] != 0) col.emplace_back(r, z[r]);
                    }
                    zcol.set_column(0, std::move(col));
                    SparseRationalMatrix y = D.multiply(zcol);
                    for (const auto& [r, v] : y.column(0)) CHECK(r < np_a);
                    CHECK(Dp.multiply(y).is_zero());
                }
            }
        }
    }
}

TEST_CASE("snapshot gap curves on the example point cloud") {
    ExampleData ex = example_data();
    std::vector<double> grid{0.0, 1.0, kRt2};

    SpectrumSeries s0 = gap_curve(ex.basis, 0, grid);
    CHECK_FALSE(s0.pairs_mode);
    CHECK(s0.degree == 0);
    REQUIRE(s0.entries.size() == 3);
    const std::size_t nullity0[] = {2, 0, 0};
    const double gap0[] = {0.0, 3.0, 4.0};
    for (int i = 0; i < 3; ++i) {
        CHECK(s0.entries[i].a == grid[i]);
        CHECK(s0.entries[i].b == grid[i]);
        CHECK(s0.entries[i].nullity == nullity0[i]);
        CHECK(s0.entries[i].gap == Catch::Approx(gap0[i]).margin(1e-9));
        CHECK(s0.entries[i].eigenvalues.size() == ex.basis.count_at(0, grid[i]));
    }

    SpectrumSeries s1 = gap_curve(ex.basis, 1, grid);
    const std::size_t nullity1[] = {0, 1, 0};
    const double gap1[] = {0.0, 3 - kRt3, 2.0};
    for (int i = 0; i < 3; ++i) {
        CHECK(s1.entries[i].nullity == nullity1[i]);
        CHECK(s1.entries[i].gap == Catch::Approx(gap1[i]).margin(1e-9));
    }
}

TEST_CASE("pair mode reports persistent spectra") {
    ExampleData ex = example_data();
    SpectrumSeries s = gap_curve_pairs(ex.basis, 1, {{1.0, 1.2}, {1.0, kRt2}});
    CHECK(s.pairs_mode);
    REQUIRE(s.entries.size() == 2);
    CHECK(s.entries[0].a == 1.0);
    CHECK(s.entries[0].b == 1.2);
    CHECK(s.entries[0].nullity == 1);
    CHECK(s.entries[1].b == kRt2);
    CHECK(s.entries[1].nullity == 0);
}

TEST_CASE("spectra ignore vertex labels") {
    auto shifted_basis = [](int off) {
        return enumerate_cells({static_complex({{0 + off, 1 + off}, {1 + off, 2 + off}}),
                                static_complex({{1 + off, 2 + off}, {2 + off, 3 + off}})},
                               3);
    };
    GradedBasis a = shifted_basis(0);
    GradedBasis b = shifted_basis(25);
    for (int p = 0; p <= a.max_degree(); ++p) {
        auto ea = spectrum(laplacian(a, p).matrix);
        auto eb = spectrum(laplacian(b, p).matrix);
        check_spectrum(ea, eb);
    }
}

TEST_CASE("classic laplacian spectra of a single complex") {
    std::vector<Point> pts{{0, {0.0, 0.0}, "A"}, {1, {1.0, 0.0}, "A"}};
    DistanceMatrix dmat = distance_matrix(PointCloud::from_points(pts));
    FilteredComplex K = vr_filtration({0, 1}, dmat, 2, 2.0);

    SpectrumSeries s = classic_laplacian_curve(K, 0, {0.5, 1.0});
    REQUIRE(s.entries.size() == 2);
    check_spectrum(s.entries[0].eigenvalues, {0, 0});
    check_spectrum(s.entries[1].eigenvalues, {0, 2});
    CHECK(s.entries[1].gap == Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("classic gap regimes of the example union cloud") {
    PointCloud cloud = load_cloud(std::string(ITOP_DATA_DIR) + "/example33.csv", "auto");
    DistanceMatrix dmat = distance_matrix(cloud);
    FilteredComplex K = vr_filtration({0, 1, 2, 3}, dmat, 2, 2.5);
    SpectrumSeries s = classic_laplacian_curve(K, 0, {0.5, 1.2, 1.5, 2.3});
    REQUIRE(s.entries.size() == 4);
    const double gaps[] = {0.0, 2 - kRt2, 2.0, 4.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(s.entries[i].gap == Catch::Approx(gaps[i]).margin(1e-9));
    }
}

TEST_CASE("auto grid lists critical values and midpoints") {
    ExampleData ex = example_data();
    std::vector<double> grid = auto_grid(ex.dmat, ex.groups, 2.0);
    std::vector<double> expected{0.0, 0.5, 1.0, (1.0 + kRt2) / 2.0, kRt2};
    REQUIRE(grid.size() == expected.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(grid[i] == Catch::Approx(expected[i]).margin(1e-15));
    }

    std::vector<double> capped = auto_grid(ex.dmat, ex.groups, 1.2);
    std::vector<double> expected_capped{0.0, 0.5, 1.0};
    REQUIRE(capped.size() == expected_capped.size());
    for (std::size_t i = 0; i < capped.size(); ++i) {
        CHECK(capped[i] == Catch::Approx(expected_capped[i]).margin(1e-15));
    }
}
