// s2xr: classify the free involutions on the closed manifolds of the catalog
// and report the covering graph and index table.
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "s2xr/catalog.hpp"
#include "s2xr/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"double covers and Z/2 indices of free involutions"};
    app.require_subcommand(1);

    CLI::App* classify = app.add_subcommand("classify", "run the full classification");
    std::string catalog_path = s2xr::default_catalog_path();
    std::string format = "csv";
    std::string out_dir = ".";
    bool with_cross_check = false;
    std::string manifold;
    classify->add_option("--catalog", catalog_path, "catalog file")->capture_default_str();
    classify->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "md", "json", "dot"}))
        ->capture_default_str();
    classify->add_option("--out", out_dir, "output directory")->capture_default_str();
    classify->add_flag("--cross-check", with_cross_check,
                       "append the cup-cube discrepancy report");
    classify->add_option("--manifold", manifold, "restrict the table to one base manifold");

    CLI11_PARSE(app, argc, argv);

    try {
        const s2xr::LoadedCatalog loaded = s2xr::load_catalog(catalog_path);
        for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << "\n";

        s2xr::ClassifyOptions opts;
        opts.cross_check = with_cross_check;
        if (!manifold.empty()) opts.manifold = manifold;
        const s2xr::ClassificationReport report = s2xr::run_classification(loaded.catalog, opts);
        for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";

        for (const std::string& path : s2xr::emit_reports(report, format, out_dir))
            std::cout << path << "\n";
        return 0;
    } catch (const s2xr::CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
