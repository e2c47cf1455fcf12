#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "pmgraph/graph.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Discrete calculus, nonlinear diffusion, and estimate verification on weighted graphs"};
    app.require_subcommand(1);

    pmgcli::CommonOptions common;
    std::string theta_mode = "one", weight_mode = "unit";
    app.add_option("--seed", common.seed, "Seed for every randomized choice")
        ->capture_default_str();
    app.add_option("--out", common.out_dir, "Directory for CSV and summary output")
        ->capture_default_str();
    auto* tol_opt =
        app.add_option("--tol", common.tol, "Pass tolerance for margins")->capture_default_str();
    app.add_option("--theta", theta_mode, "Vertex measure for generated graphs: one|degree")
        ->check(CLI::IsMember({"one", "degree"}))
        ->capture_default_str();
    app.add_option("--weights", weight_mode, "Edge weights for generated graphs: unit|random")
        ->check(CLI::IsMember({"unit", "random"}))
        ->capture_default_str();

    pmgcli::IdentityOptions identity;
    auto* identity_cmd =
        app.add_subcommand("verify-identity", "Check the discrete power identity on fields");
    identity_cmd->add_option("--graph", identity.graph, "Graph file or generator spec")
        ->required();
    identity_cmd->add_option("--field", identity.field_file,
                             "Field document (default: random fields)");
    identity_cmd->add_option("--random-fields", identity.random_fields, "Number of random fields")
        ->capture_default_str();
    identity_cmd->add_option("--m", identity.m_values, "Exponents to test")
        ->delimiter(',')
        ->capture_default_str();

    pmgcli::SimulateOptions simulate;
    auto* simulate_cmd = app.add_subcommand("simulate", "Integrate a diffusion problem");
    simulate_cmd->add_option("--graph", simulate.graph, "Graph file or generator spec")
        ->required();
    simulate_cmd->add_option("--problem", simulate.problem_file, "Problem document")->required();
    simulate_cmd->add_option("--scheme", simulate.scheme, "Integration scheme: adaptive|rk4")
        ->check(CLI::IsMember({"adaptive", "rk4"}))
        ->capture_default_str();
    simulate_cmd->add_option("--grid", simulate.grid, "Stored output states")
        ->capture_default_str();
    simulate_cmd->add_option("--step", simulate.fixed_step, "Fixed step size (rk4 scheme)")
        ->capture_default_str();
    simulate_cmd
        ->add_option("--tolerance", simulate.tolerance, "Local error per unit time (adaptive)")
        ->capture_default_str();

    pmgcli::GradientEstimateOptions gradient;
    auto* gradient_cmd = app.add_subcommand("verify-gradient-estimate",
                                            "Check the pointwise gradient estimates along a run");
    gradient_cmd->add_option("--graph", gradient.graph, "Graph file or generator spec")
        ->required();
    gradient_cmd->add_option("--problem", gradient.problem_file, "Problem document")->required();
    gradient_cmd->add_option("--form", gradient.form, "Estimate form: basic|li-yau")
        ->check(CLI::IsMember({"basic", "li-yau"}))
        ->capture_default_str();
    gradient_cmd->add_option("--grid", gradient.grid, "Stored output states")
        ->capture_default_str();
    auto* g_t1 = gradient_cmd->add_option("--t1", gradient.t1, "Restrict checks to t >= t1");
    auto* g_t2 = gradient_cmd->add_option("--t2", gradient.t2, "Restrict checks to t <= t2");
    gradient_cmd->add_option("--x", gradient.x_label, "Restrict rows to this vertex");
    gradient_cmd->add_option("--y", gradient.y_label, "Restrict rows to this vertex too");

    pmgcli::HarnackOptions harnack;
    auto* harnack_cmd =
        app.add_subcommand("verify-harnack", "Check the two-point Harnack bound along a run");
    harnack_cmd->add_option("--graph", harnack.graph, "Graph file or generator spec")->required();
    harnack_cmd->add_option("--problem", harnack.problem_file, "Problem document")->required();
    harnack_cmd->add_option("--x", harnack.x_label, "Label of the earlier vertex");
    harnack_cmd->add_option("--y", harnack.y_label, "Label of the later vertex");
    auto* h_t1 = harnack_cmd->add_option("--t1", harnack.t1, "Earlier time");
    auto* h_t2 = harnack_cmd->add_option("--t2", harnack.t2, "Later time");
    harnack_cmd->add_option("--pairs", harnack.pairs, "random:<n> sampled space-time pairs");
    harnack_cmd->add_option("--path-cap", harnack.path_cap, "Shortest-path enumeration cap")
        ->capture_default_str();
    harnack_cmd->add_option("--bound", harnack.bound, "Exponent form: path|c0")
        ->check(CLI::IsMember({"path", "c0"}))
        ->capture_default_str();
    auto* h_c0 = harnack_cmd->add_option(
        "--c0", harnack.c0, "Source bound for --bound c0 (default: measured from psi)");
    harnack_cmd->add_option("--grid", harnack.grid, "Stored output states")
        ->capture_default_str();

    pmgcli::LemmaOptions lemma;
    auto* lemma_cmd =
        app.add_subcommand("verify-lemma", "Check the interval minimization inequality");
    lemma_cmd->add_option("--random", lemma.random_instances, "Number of random instances")
        ->capture_default_str();
    lemma_cmd->add_option("--grid", lemma.grid, "Interior s-grid size")->capture_default_str();

    pmgcli::KernelOptions kernel;
    auto* kernel_cmd = app.add_subcommand("kernel", "Heat kernel values and two-sided bounds");
    kernel_cmd->add_option("--graph", kernel.graph, "Graph file or generator spec (theta = deg)")
        ->required();
    kernel_cmd->add_option("--t", kernel.t, "Time")->required();
    kernel_cmd->add_option("--eps", kernel.eps, "Certified truncation bound")
        ->capture_default_str();
    kernel_cmd->add_flag("--check-bounds", kernel.check_bounds,
                         "Also evaluate the two-sided bounds");
    kernel_cmd->add_option("--m", kernel.m, "Exponent in the bounds")->capture_default_str();
    kernel_cmd->add_option("--c0", kernel.c0, "Source bound in the bounds")
        ->capture_default_str();

    pmgcli::SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run one check across a list of graphs");
    sweep_cmd
        ->add_option("--check", sweep.check, "identity|gradient-estimate|harnack|lemma|kernel")
        ->required();
    sweep_cmd->add_option("--graphs", sweep.graphs, "Comma-separated graph files or specs");
    sweep_cmd->add_option("--n", sweep.samples, "Samples per graph")->capture_default_str();
    sweep_cmd->add_option("--t", sweep.t, "Kernel time")->capture_default_str();
    sweep_cmd->add_option("--m", sweep.m, "Exponent")->capture_default_str();

    // Global flags may appear after the subcommand name.
    for (CLI::App* sub : {identity_cmd, simulate_cmd, gradient_cmd, harnack_cmd, lemma_cmd,
                          kernel_cmd, sweep_cmd}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    common.tol_given = tol_opt->count() > 0;
    common.theta = theta_mode == "degree" ? pmg::ThetaMode::degree : pmg::ThetaMode::one;
    common.weights = weight_mode == "random" ? pmg::WeightMode::random : pmg::WeightMode::unit;
    gradient.t1_given = g_t1->count() > 0;
    gradient.t2_given = g_t2->count() > 0;
    harnack.t1_given = h_t1->count() > 0;
    harnack.t2_given = h_t2->count() > 0;
    harnack.c0_given = h_c0->count() > 0;

    try {
        if (identity_cmd->parsed()) return pmgcli::run_verify_identity(common, identity);
        if (simulate_cmd->parsed()) return pmgcli::run_simulate(common, simulate);
        if (gradient_cmd->parsed()) return pmgcli::run_gradient_estimate(common, gradient);
        if (harnack_cmd->parsed()) return pmgcli::run_harnack(common, harnack);
        if (lemma_cmd->parsed()) return pmgcli::run_lemma(common, lemma);
        if (kernel_cmd->parsed()) return pmgcli::run_kernel(common, kernel);
        if (sweep_cmd->parsed()) return pmgcli::run_sweep(common, sweep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
