#include "sk/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "sk/identities.hpp"
#include "sk/io.hpp"

namespace sk {

namespace {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot read '" + path + "'");
    Json j;
    in >> j;
    return j;
}

void emit(const Json& j, bool as_text, const std::string& out_path, std::ostream& out) {
    std::string payload = as_text ? j.dump(2) : j.dump();
    if (!out_path.empty()) {
        std::ofstream of(out_path);
        if (!of) throw std::ios_base::failure("cannot write '" + out_path + "'");
        of << payload << "\n";
    } else {
        out << payload << "\n";
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"separable Kahler geometry engine"};
    app.require_subcommand(1);

    std::string input, out_path, matrices_arg, grid_arg;
    bool text = false, json_flag = false;
    std::uint64_t seed = 1;
    int points = 10;
    double step = 1e-3;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) cmd->add_option("input", input, "input JSON file")->required();
        cmd->add_flag("--text", text, "pretty-printed output");
        cmd->add_flag("--json", json_flag, "compact JSON output (default)");
        cmd->add_option("--out", out_path, "write the report to a file");
    };

    auto* validate = app.add_subcommand("validate", "validate a factorization structure");
    add_common(validate, true);
    auto* curvature = app.add_subcommand("curvature", "scalar curvature of a geometry");
    add_common(curvature, true);
    auto* extremal = app.add_subcommand("extremal", "extremality verdict and Killing element");
    add_common(extremal, true);
    auto* solve = app.add_subcommand("solve", "enumerate extremal solution families");
    add_common(solve, true);
    auto* identities = app.add_subcommand("identities", "run the summation-identity suite");
    add_common(identities, false);
    identities->add_option("--grid", grid_arg, "grid bound, e.g. m<=5");
    auto* oracle = app.add_subcommand("oracle", "finite-difference curvature cross-check");
    add_common(oracle, true);
    oracle->add_option("--seed", seed, "sampling seed");
    oracle->add_option("--points", points, "number of sample points");
    oracle->add_option("--step", step, "finite-difference step");
    auto* transform = app.add_subcommand("transform", "projective change of coordinates");
    add_common(transform, true);
    transform->add_option("--matrices", matrices_arg, "JSON list of per-group 2x2 matrices")->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate->parsed()) {
            Json j = load_json_file(input);
            Json src = j.contains("structure") ? j.at("structure") : j;
            try {
                FactorizationStructure fs = structure_from_json(src);
                emit(Json{{"valid", true}, {"dimension", fs.m() + 1}}, text, out_path, out);
                return 0;
            } catch (const InvalidStructure& e) {
                emit(Json{{"valid", false}, {"rank", e.rank}, {"error", e.what()}}, text, out_path, out);
                return 1;
            }
        }
        if (curvature->parsed()) {
            GeometrySpec g = geometry_from_json(load_json_file(input));
            emit(report_to_json(extremality_residual(g)), text, out_path, out);
            return 0;
        }
        if (extremal->parsed()) {
            GeometrySpec g = geometry_from_json(load_json_file(input));
            CurvatureReport rep = extremality_residual(g);
            Json j = report_to_json(rep);
            j.erase("scal");
            emit(j, text, out_path, out);
            return 0;
        }
        if (solve->parsed()) {
            Json j = load_json_file(input);
            FactorizationStructure fs = structure_from_json(j.at("structure"));
            HTensor beta = htensor_from_json(j.at("beta"));
            Json families = Json::array();
            for (const auto& fam : solve_families(fs, beta)) families.push_back(family_to_json(fam));
            emit(Json{{"families", families}}, text, out_path, out);
            return 0;
        }
        if (identities->parsed()) {
            int max_m = 6;
            if (!grid_arg.empty()) {
                auto pos = grid_arg.find_last_of("=<");
                max_m = std::stoi(grid_arg.substr(pos + 1));
            }
            auto results = run_identity_grid(max_m);
            int passed = 0;
            Json failures = Json::array();
            for (const auto& r : results) {
                if (r.holds) {
                    ++passed;
                } else {
                    Json f{{"name", r.name}, {"detail", r.detail}};
                    for (const auto& [k, v] : r.params) f[k] = v;
                    failures.push_back(std::move(f));
                }
            }
            emit(Json{{"total", results.size()}, {"passed", passed}, {"failures", failures}}, text, out_path, out);
            return failures.empty() ? 0 : 1;
        }
        if (oracle->parsed()) {
            GeometrySpec g = geometry_from_json(load_json_file(input));
            auto pts = sample_admissible_points(g, points, seed);
            emit(compare_to_json(compare(g, pts, step)), text, out_path, out);
            return 0;
        }
        if (transform->parsed()) {
            GeometrySpec g = geometry_from_json(load_json_file(input));
            auto mats = matrices_from_json(Json::parse(matrices_arg));
            emit(geometry_to_json(transform_coordinates(g, mats)), text, out_path, out);
            return 0;
        }
    } catch (const Json::exception& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        err << "io error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidStructure& e) {
        err << "invalid structure (rank " << e.rank << "): " << e.what() << "\n";
        return 1;
    } catch (const UnsupportedCase& e) {
        err << "unsupported: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace sk
