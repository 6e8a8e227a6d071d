#include "itop/errors.hpp"
#include "itop/run.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    itop::RunConfig cfg;
    CLI::App app{"Barcodes, Wu characteristics and Laplacian spectra for interacting point clouds"};
    app.set_config("--config", "", "Read options from a TOML-style file (flags win)");
    app.add_option("--input", cfg.input_path, "Input file (.xyz, .csv or .cplx)");
    app.add_option("--format", cfg.format, "Input format: xyz, csv, complex or auto");
    app.add_option("--groups", cfg.groups_text, "Label groups, e.g. \"C,B;C,H\"");
    app.add_option("--max-degree", cfg.max_degree, "Top degree to report");
    app.add_option("--max-scale", cfg.max_scale, "Filtration cutoff (negative = auto)");
    app.add_option("--grid", cfg.grid_spec, "Scale grid: auto, a:b:step or v1,v2,...");
    app.add_option("--mode", cfg.mode, "barcode | spectra | wu | benchmark | classic");
    app.add_option("--field", cfg.field, "Coefficient field: q or f2");
    app.add_option("--tol", cfg.tol, "Relative zero threshold for eigenvalues");
    app.add_option("--out", cfg.out_dir, "Output directory");
    app.add_option("--pairs", cfg.pairs_text, "Persistent pairs a:b,c:d for spectra mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        itop::run_command(cfg);
    } catch (const itop::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const itop::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
