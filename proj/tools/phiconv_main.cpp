#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "phiconv/cli.hpp"
#include "phiconv/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"phiconv: Phi-convexity toolkit (hulls, exposed/extremal points, "
                 "variational principle, dual-ball boundaries)"};
    app.require_subcommand(1);

    phiconv::cli::RunOptions options;
    std::string out_path;
    bool text = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--problem", options.problem_path, "problem JSON file");
        sub->add_option("--set", options.set_name, "named point set from the problem file");
        sub->add_option("--tol", options.tol, "strictness threshold for exposure decisions");
        sub->add_option("--seed", options.seed, "random seed");
        sub->add_option("--samples", options.samples, "sample count (variational)");
        sub->add_option("--epsilon", options.epsilon, "perturbation radius (variational)");
        sub->add_option("--budget", options.budget, "perturbation trial budget (variational)");
        sub->add_option("--radius", options.radius, "sampling ball radius (variational)");
        sub->add_option("--out", out_path, "write the JSON report to this file");
        sub->add_flag("--text", text, "print a human-readable rendering instead of JSON");
    };

    for (const char* name : {"hull", "exposed", "extremal", "compare", "variational", "boundary"})
        add_common(app.add_subcommand(name));
    auto* check = app.add_subcommand("check");
    add_common(check);
    check->add_option("--mode", options.mode, "reconstruction mode: extremal|exposed");
    auto* gallery = app.add_subcommand("gallery");
    add_common(gallery);
    gallery->add_option("--name", options.gallery_name,
                        "instance: line3|square|truncated_cube(n)|stadium|two_point_algebra|"
                        "random_polytope(d,n,seed)");

    CLI11_PARSE(app, argc, argv);
    options.subcommand = app.get_subcommands().front()->get_name();

    try {
        phiconv::Report report = phiconv::cli::run(options);
        const std::string rendered = text ? report.to_text() : report.to_json().dump(2) + "\n";
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "cannot write report to '" << out_path << "'\n";
                return 2;
            }
            out << rendered;
        } else {
            std::cout << rendered;
        }
        return report.all_pass() ? 0 : 1;
    } catch (const phiconv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
