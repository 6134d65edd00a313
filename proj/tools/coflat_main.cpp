#include "coflat/errors.hpp"
#include "coflat/report.hpp"
#include "coflat/runner.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"coflat: exact checks for partial Poisson, PQ, PN and POmega structures "
                 "on polynomial model spaces"};
    app.set_version_flag("--version", std::string(coflat::tool_version));
    app.require_subcommand(1);

    coflat::RunOptions opt;
    bool serial = false;

    auto add_common = [&](CLI::App* cmd, bool input_required) {
        auto* in = cmd->add_option("--input,-i", opt.input, "structure file (.toml or .json)");
        if (input_required) in->required();
        cmd->add_option("--output,-o", opt.output, "write the JSON report to this path");
        cmd->add_flag("--serial", serial, "run tensor kernels on one thread");
    };

    add_common(app.add_subcommand("check", "antisymmetry/Jacobi of the subject, plus PN and "
                                           "POmega conditions for attached sections"),
               true);
    add_common(app.add_subcommand("pencil", "compatibility and symbolic pencil Jacobi for a "
                                            "pair of anchors"),
               true);
    auto* chain = app.add_subcommand("chain", "Magri chain by argument translation of a Casimir");
    add_common(chain, true);
    chain->add_option("--depth", opt.depth, "chain length; default caps at the Casimir degree");
    auto* casimir =
        app.add_subcommand("casimir", "basis of polynomial Casimirs up to a degree bound");
    add_common(casimir, true);
    casimir->add_option("--max-degree", opt.max_degree, "degree bound for the search")
        ->capture_default_str();
    auto* restrict_cmd =
        app.add_subcommand("restrict", "induce the structure on an affine subspace x = x0 + A s");
    add_common(restrict_cmd, true);
    restrict_cmd->add_option("--samples", opt.samples, "sample count for the nonlinear fallback")
        ->capture_default_str();
    restrict_cmd->add_option("--seed", opt.seed, "sampling seed")->capture_default_str();
    add_common(app.add_subcommand("project", "push the structure to a linear quotient y = B x"),
               true);
    auto* kdv = app.add_subcommand("kdv", "periodic KdV laboratory: exact stencil identities "
                                          "plus floating-point diagnostics");
    add_common(kdv, false);
    kdv->add_option("--n", opt.kdv_n, "grid size for the diagnostics");
    kdv->add_option("--dt", opt.kdv_dt, "time step");
    kdv->add_option("--steps", opt.kdv_steps, "number of steps");
    kdv->add_option("--u0", opt.kdv_u0, "initial profile: cos, sin, small_cos, zero");
    kdv->add_option("--report", opt.output, "write the JSON report to this path (same as "
                                            "--output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    opt.command = app.get_subcommands().front()->get_name();
    opt.mode = serial ? coflat::ExecMode::serial : coflat::ExecMode::parallel;

    try {
        return coflat::run_command(opt, std::cout);
    } catch (const coflat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
