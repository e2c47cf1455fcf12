#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmgraph/generators.hpp"

namespace pmgcli {

// Flags shared by every subcommand.
struct CommonOptions {
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    double tol = 1e-9;
    bool tol_given = false;
    pmg::ThetaMode theta = pmg::ThetaMode::one;
    pmg::WeightMode weights = pmg::WeightMode::unit;
};

struct IdentityOptions {
    std::string graph;
    std::string field_file;   // empty: use random fields
    int random_fields = 100;
    std::vector<double> m_values{2.0};
};

struct SimulateOptions {
    std::string graph;
    std::string problem_file;
    std::string scheme = "adaptive";  // or "rk4"
    int grid = 33;
    double fixed_step = 1e-3;
    double tolerance = 1e-8;
};

struct GradientEstimateOptions {
    std::string graph;
    std::string problem_file;
    std::string form = "basic";  // or "li-yau"
    int grid = 33;
    double t1 = 0.0, t2 = 0.0;
    bool t1_given = false, t2_given = false;
    std::string x_label, y_label;  // optional vertex filters
};

struct HarnackOptions {
    std::string graph;
    std::string problem_file;
    std::string x_label, y_label;
    double t1 = 0.0, t2 = 0.0;
    bool t1_given = false, t2_given = false;
    std::string pairs;  // "random:<n>"
    std::size_t path_cap = 10000;
    std::string bound = "path";  // or "c0"
    double c0 = 0.0;
    bool c0_given = false;
    int grid = 33;
};

struct LemmaOptions {
    int random_instances = 100;
    int grid = 1023;
};

struct KernelOptions {
    std::string graph;
    double t = 1.0;
    double eps = 1e-10;
    bool check_bounds = false;
    double m = 2.0;
    double c0 = 0.0;
};

struct SweepOptions {
    std::string check;   // identity | gradient-estimate | harnack | lemma | kernel
    std::string graphs;  // comma-separated specs/files
    int samples = 50;
    double t = 1.0;
    double m = 2.0;
};

int run_verify_identity(const CommonOptions& common, const IdentityOptions& opt);
int run_simulate(const CommonOptions& common, const SimulateOptions& opt);
int run_gradient_estimate(const CommonOptions& common, const GradientEstimateOptions& opt);
int run_harnack(const CommonOptions& common, const HarnackOptions& opt);
int run_lemma(const CommonOptions& common, const LemmaOptions& opt);
int run_kernel(const CommonOptions& common, const KernelOptions& opt);
int run_sweep(const CommonOptions& common, const SweepOptions& opt);

}  // namespace pmgcli
