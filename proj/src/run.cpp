#include "itop/run.hpp"

#include "itop/errors.hpp"
#include "itop/geometry.hpp"
#include "itop/homology.hpp"
#include "itop/interaction.hpp"
#include "itop/serialize.hpp"
#include "itop/simplex.hpp"
#include "itop/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace itop {

namespace {

struct GeometricInput {
    PointCloud cloud;
    DistanceMatrix dmat;
    std::vector<std::vector<int>> groups;
    std::vector<int> union_ids;
    double max_scale = 0.0;
    std::vector<double> grid;
};

Field parse_field(const std::string& text) {
    if (text == "q") return Field::Q;
    if (text == "f2") return Field::F2;
    throw UsageError("unknown field '" + text + "' (expected q or f2)");
}

std::vector<std::string> split_text(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    return parts;
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + text + "'");
    }
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    if (spec.find(':') != std::string::npos) {
        auto parts = split_text(spec, ':');
        if (parts.size() != 3) throw UsageError("grid range must be a:b:step");
        double a = parse_number(parts[0], "grid start");
        double b = parse_number(parts[1], "grid end");
        double step = parse_number(parts[2], "grid step");
        if (step <= 0.0) throw UsageError("grid step must be positive");
        if (b < a) throw UsageError("grid end below start");
        for (double t = a; t <= b + step * 1e-9; t += step) grid.push_back(t);
    } else {
        for (const auto& part : split_text(spec, ',')) {
            if (part.empty()) throw UsageError("empty grid entry");
            grid.push_back(parse_number(part, "grid value"));
        }
        std::sort(grid.begin(), grid.end());
    }
    if (grid.empty()) throw UsageError("grid is empty");
    return grid;
}

std::vector<std::pair<double, double>> parse_pairs(const std::string& text) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& part : split_text(text, ',')) {
        auto ab = split_text(part, ':');
        if (ab.size() != 2) throw UsageError("pair must be a:b, got '" + part + "'");
        double a = parse_number(ab[0], "pair start");
        double b = parse_number(ab[1], "pair end");
        if (a > b) throw UsageError("pair needs a <= b, got '" + part + "'");
        pairs.emplace_back(a, b);
    }
    if (pairs.empty()) throw UsageError("pair list is empty");
    return pairs;
}

double max_group_distance(const DistanceMatrix& dmat, const std::vector<std::vector<int>>& groups) {
    double m = 0.0;
    for (const auto& group : groups) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                m = std::max(m, dmat(group[i], group[j]));
            }
        }
    }
    return m;
}

// union_grid widens the critical set to all pairwise distances in the union,
// which covers both the interaction and the classic pipeline.
GeometricInput load_geometric(const RunConfig& cfg, bool union_grid) {
    PointCloud cloud = load_cloud(cfg.input_path, cfg.format);
    DistanceMatrix dmat = distance_matrix(cloud);
    GeometricInput in{std::move(cloud), std::move(dmat), {}, {}, 0.0, {}};
    if (cfg.groups_text.empty()) throw UsageError("missing --groups");
    in.groups = select_groups(in.cloud, GroupingSpec::parse(cfg.groups_text));

    std::set<int> ids;
    for (const auto& group : in.groups) ids.insert(group.begin(), group.end());
    in.union_ids.assign(ids.begin(), ids.end());

    std::vector<std::vector<int>> grid_groups =
        union_grid ? std::vector<std::vector<int>>{in.union_ids} : in.groups;
    in.max_scale = cfg.max_scale >= 0.0 ? cfg.max_scale : max_group_distance(in.dmat, grid_groups);
    in.grid = cfg.grid_spec == "auto" ? auto_grid(in.dmat, grid_groups, in.max_scale)
                                      : parse_grid(cfg.grid_spec);
    return in;
}

// Factor dimensions are capped at max_degree + 1: the basis carries one extra
// degree so that top-degree ranks and deaths are complete.
std::vector<FilteredComplex> build_factors(const GeometricInput& in, int max_degree) {
    std::vector<FilteredComplex> factors;
    factors.reserve(in.groups.size());
    for (const auto& group : in.groups) {
        factors.push_back(vr_filtration(group, in.dmat, max_degree + 1, in.max_scale));
    }
    return factors;
}

void ensure_out_dir(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void write_spectra_files(const RunConfig& cfg, const SpectrumSeries& series, int degree) {
    std::string stem = "spectra_p" + std::to_string(degree);
    write_text_file(out_path(cfg, stem + ".json"), spectra_to_json(series).dump(2) + "\n");
    write_text_file(out_path(cfg, stem + ".csv"), spectra_to_csv(series));
    write_text_file(out_path(cfg, stem + ".svg"), spectra_to_svg(series));
}

FilteredComplex load_explicit_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<FilteredComplex::Cell> cells;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::vector<int> verts;
        std::string tok;
        while (tokens >> tok) {
            if (tok[0] == '#') break;
            try {
                std::size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
                verts.push_back(v);
            } catch (const std::exception&) {
                throw ParseError(path + ":" + std::to_string(line_no) +
                                 ": bad vertex id '" + tok + "'");
            }
        }
        if (!verts.empty()) cells.emplace_back(Simplex(std::move(verts)), 0.0);
    }
    if (cells.empty()) throw ParseError(path + ": no simplices");
    return FilteredComplex::from_cells(std::move(cells), /*add_missing_faces=*/true);
}

bool is_complex_format(const RunConfig& cfg) {
    if (cfg.format == "complex") return true;
    if (cfg.format != "auto") return false;
    return std::filesystem::path(cfg.input_path).extension() == ".cplx";
}

void validate_common(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw UsageError("missing --input");
    if (cfg.max_degree < 0) throw UsageError("max-degree must be nonnegative");
    if (cfg.tol <= 0.0) throw UsageError("tol must be positive");
    parse_field(cfg.field);
}

}  // namespace

void cmd_barcode(const RunConfig& cfg) {
    validate_common(cfg);
    GeometricInput in = load_geometric(cfg, /*union_grid=*/false);
    GradedBasis basis = enumerate_cells(build_factors(in, cfg.max_degree), cfg.max_degree + 1,
                                        in.max_scale);
    Barcode bc = persistent_barcode(basis, parse_field(cfg.field));
    ensure_out_dir(cfg);
    for (int p = 0; p <= cfg.max_degree; ++p) {
        std::string stem = "barcode_p" + std::to_string(p);
        write_text_file(out_path(cfg, stem + ".json"), barcode_to_json(bc, p).dump(2) + "\n");
        write_text_file(out_path(cfg, stem + ".csv"), barcode_to_csv(bc, p));
        write_text_file(out_path(cfg, stem + ".svg"), barcode_to_svg(bc, p, in.max_scale));
    }
}

void cmd_spectra(const RunConfig& cfg) {
    validate_common(cfg);
    GeometricInput in = load_geometric(cfg, /*union_grid=*/false);
    std::vector<std::pair<double, double>> pairs;
    if (!cfg.pairs_text.empty()) pairs = parse_pairs(cfg.pairs_text);

    double top_scale = in.max_scale;
    for (const auto& [a, b] : pairs) top_scale = std::max(top_scale, b);
    if (!in.grid.empty()) top_scale = std::max(top_scale, in.grid.back());

    GeometricInput scaled = in;
    scaled.max_scale = top_scale;
    GradedBasis basis = enumerate_cells(build_factors(scaled, cfg.max_degree), cfg.max_degree + 1,
                                        top_scale);
    ensure_out_dir(cfg);
    for (int p = 0; p <= cfg.max_degree; ++p) {
        SpectrumSeries series = pairs.empty() ? gap_curve(basis, p, in.grid, cfg.tol)
                                              : gap_curve_pairs(basis, p, pairs, cfg.tol);
        write_spectra_files(cfg, series, p);
    }
}

void cmd_classic(const RunConfig& cfg) {
    validate_common(cfg);
    GeometricInput in = load_geometric(cfg, /*union_grid=*/true);
    FilteredComplex K = vr_filtration(in.union_ids, in.dmat, cfg.max_degree + 1, in.max_scale);
    ensure_out_dir(cfg);
    for (int p = 0; p <= cfg.max_degree; ++p) {
        write_spectra_files(cfg, classic_laplacian_curve(K, p, in.grid, cfg.tol), p);
    }
}

void cmd_wu(const RunConfig& cfg) {
    validate_common(cfg);
    FilteredComplex K = [&] {
        if (is_complex_format(cfg)) return load_explicit_complex(cfg.input_path);
        GeometricInput in = load_geometric(cfg, /*union_grid=*/false);
        if (in.groups.size() != 2 || in.groups[0] != in.groups[1]) {
            throw UsageError("wu mode needs two identical groups");
        }
        int dim_cap = static_cast<int>(in.groups[0].size()) - 1;
        return vr_filtration(in.groups[0], in.dmat, dim_cap, in.max_scale);
    }();

    int top = 2 * std::max(K.max_dim(), 0);
    GradedBasis basis = enumerate_cells({K, K}, top);
    WuReport report = wu_characteristic(basis, betti(basis, parse_field(cfg.field)));
    ensure_out_dir(cfg);
    write_text_file(out_path(cfg, "wu.json"), wu_to_json(report).dump(2) + "\n");
}

void cmd_benchmark(const RunConfig& cfg) {
    validate_common(cfg);
    GeometricInput in = load_geometric(cfg, /*union_grid=*/true);
    std::vector<BenchmarkRow> rows;
    for (int p = 0; p <= 1; ++p) {
        auto start = std::chrono::steady_clock::now();
        GradedBasis basis = enumerate_cells(build_factors(in, 1), 2, in.max_scale);
        gap_curve(basis, p, in.grid, cfg.tol);
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        rows.push_back({"interaction", p, dt.count()});
    }
    for (int p = 0; p <= 1; ++p) {
        auto start = std::chrono::steady_clock::now();
        FilteredComplex K = vr_filtration(in.union_ids, in.dmat, 2, in.max_scale);
        classic_laplacian_curve(K, p, in.grid, cfg.tol);
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        rows.push_back({"classic", p, dt.count()});
    }
    ensure_out_dir(cfg);
    write_text_file(out_path(cfg, "benchmark.csv"), benchmark_to_csv(rows));
}

void run_command(const RunConfig& cfg) {
    if (cfg.mode == "barcode") {
        cmd_barcode(cfg);
    } else if (cfg.mode == "spectra") {
        cmd_spectra(cfg);
    } else if (cfg.mode == "wu") {
        cmd_wu(cfg);
    } else if (cfg.mode == "benchmark") {
        cmd_benchmark(cfg);
    } else if (cfg.mode == "classic") {
        cmd_classic(cfg);
    } else {
        throw UsageError("unknown mode '" + cfg.mode + "'");
    }
}

}  // namespace itop
