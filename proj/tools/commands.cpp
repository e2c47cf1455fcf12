#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "pmgraph/calculus.hpp"
#include "pmgraph/csv.hpp"
#include "pmgraph/estimates.hpp"
#include "pmgraph/interval_inequality.hpp"
#include "pmgraph/io.hpp"
#include "pmgraph/kernel.hpp"
#include "pmgraph/pme.hpp"
#include "pmgraph/rng.hpp"

namespace pmgcli {

using namespace pmg;

namespace {

WeightedGraph resolve_graph(const std::string& arg, const CommonOptions& common) {
    GeneratorOptions gopt;
    gopt.theta = common.theta;
    gopt.weights = common.weights;
    gopt.seed = common.seed;
    if (auto generated = graph_from_spec(arg, gopt)) return *std::move(generated);
    return load_graph_file(arg);
}

std::string out_path(const CommonOptions& common, const std::string& name) {
    std::filesystem::create_directories(common.out_dir);
    return (std::filesystem::path(common.out_dir) / name).string();
}

// Counts + worst margin, written to <name>_summary.txt and stdout.
struct Tally {
    long passed = 0, failed = 0, vacuous = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::string worst_where;

    void add(CheckStatus s, double margin, const std::string& where) {
        switch (s) {
            case CheckStatus::pass: ++passed; break;
            case CheckStatus::fail: ++failed; break;
            case CheckStatus::vacuous: ++vacuous; return;
        }
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_where = where;
        }
    }

    int write(const CommonOptions& common, const std::string& name,
              const std::string& detail = {}) const {
        std::ofstream out(out_path(common, name + "_summary.txt"));
        auto emit = [&](std::ostream& os) {
            os << name << ": pass=" << passed << " fail=" << failed << " vacuous=" << vacuous
               << "\n";
            if (passed + failed > 0 && std::isfinite(worst_margin)) {
                os << "worst margin: " << csv_double(worst_margin);
                if (!worst_where.empty()) os << " at " << worst_where;
                os << "\n";
            }
            if (!detail.empty()) os << detail << "\n";
            os << "result: " << (failed == 0 ? "OK" : "FAIL") << "\n";
        };
        emit(out);
        emit(std::cout);
        return failed == 0 ? 0 : 1;
    }
};

void report_rows_to_csv(CsvWriter& csv, const WeightedGraph& g, const EstimateReport& report) {
    for (const auto& row : report.rows) {
        csv.write_row({g.labels[static_cast<std::size_t>(row.x)],
                       g.labels[static_cast<std::size_t>(row.y)], csv_double(row.t1),
                       csv_double(row.t2), csv_double(row.lhs), csv_double(row.rhs),
                       csv_double(row.margin), to_string(row.status)});
    }
}

IntegrationResult integrate_for_checks(const PMEProblem& problem, int grid,
                                       const std::vector<double>& extra) {
    IntegratorOptions opt;
    opt.output_points = grid;
    opt.extra_output_times = extra;
    return integrate(problem, opt);
}

PMEProblem load_problem_for(const WeightedGraph& g, const std::string& path) {
    ParsedProblem parsed = load_problem_file(path, g);
    return parsed.problem;
}

Poly random_cubic(Rng& rng) {
    return Poly({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                 rng.uniform(-2.0, 2.0)});
}

IntervalInequalityInstance random_lemma_instance(Rng& rng) {
    IntervalInequalityInstance inst;
    inst.c = rng.uniform(0.1, 5.0);
    inst.alpha = rng.uniform(0.1, 5.0);
    inst.t1 = rng.uniform(-2.0, 2.0);
    inst.t2 = inst.t1 + rng.uniform(0.2, 3.0);
    inst.gamma = random_cubic(rng);
    inst.psi1 = random_cubic(rng);
    inst.psi2 = random_cubic(rng);
    return inst;
}

}  // namespace

int run_verify_identity(const CommonOptions& common, const IdentityOptions& opt) {
    const WeightedGraph g = resolve_graph(opt.graph, common);
    const double threshold = common.tol_given ? common.tol : 1e-10;

    std::vector<VertexField> fields;
    if (!opt.field_file.empty()) {
        fields.push_back(load_field_file(opt.field_file, g));
    } else {
        Rng rng(common.seed);
        for (int i = 0; i < opt.random_fields; ++i) {
            VertexField u(static_cast<std::size_t>(g.vertex_count()));
            for (auto& v : u) v = rng.uniform(0.1, 10.0);
            fields.push_back(std::move(u));
        }
    }

    CsvWriter csv(out_path(common, "verify-identity.csv"),
                  {"sample", "m", "max_residual", "status"});
    Tally tally;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        for (double m : opt.m_values) {
            const double residual = max_relative_residual(g, fields[i], m);
            const bool ok = residual <= threshold;
            tally.add(ok ? CheckStatus::pass : CheckStatus::fail, threshold - residual,
                      "sample " + std::to_string(i) + " m=" + csv_double(m));
            csv.write_row({std::to_string(i), csv_double(m), csv_double(residual),
                           ok ? "pass" : "fail"});
        }
    }
    return tally.write(common, "verify-identity",
                       "graph: " + g.name + ", threshold: " + csv_double(threshold));
}

int run_simulate(const CommonOptions& common, const SimulateOptions& opt) {
    const WeightedGraph g = resolve_graph(opt.graph, common);
    const PMEProblem problem = load_problem_for(g, opt.problem_file);

    IntegratorOptions iopt;
    iopt.scheme = opt.scheme == "rk4" ? IntegratorOptions::Scheme::explicit_rk4
                                      : IntegratorOptions::Scheme::adaptive;
    iopt.output_points = opt.grid;
    iopt.fixed_step = opt.fixed_step;
    iopt.tolerance = opt.tolerance;
    const IntegrationResult result = integrate(problem, iopt);

    CsvWriter csv(out_path(common, "simulate.csv"), {"t", "x", "u", "ut"});
    const Trajectory& traj = result.trajectory;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        for (int x = 0; x < g.vertex_count(); ++x) {
            csv.write_row({csv_double(traj.times[i]), g.labels[static_cast<std::size_t>(x)],
                           csv_double(traj.states[i][static_cast<std::size_t>(x)]),
                           csv_double(traj.ut[i][static_cast<std::size_t>(x)])});
        }
    }

    std::ofstream out(out_path(common, "simulate_summary.txt"));
    auto emit = [&](std::ostream& os) {
        os << "simulate: states=" << traj.times.size()
           << " t_reached=" << csv_double(result.t_reached) << "\n";
        os << "status: "
           << (result.status == IntegrationStatus::completed ? "completed"
               : result.status == IntegrationStatus::blow_up ? "blow-up"
                                                             : "positivity-loss")
           << "\n";
        if (!result.diagnostic.empty()) os << "diagnostic: " << result.diagnostic << "\n";
    };
    emit(out);
    emit(std::cout);
    return result.status == IntegrationStatus::completed ? 0 : 2;
}

int run_gradient_estimate(const CommonOptions& common, const GradientEstimateOptions& opt) {
    const WeightedGraph g = resolve_graph(opt.graph, common);
    const PMEProblem problem = load_problem_for(g, opt.problem_file);

    std::vector<double> extra;
    if (opt.t1_given) extra.push_back(opt.t1);
    if (opt.t2_given) extra.push_back(opt.t2);
    const IntegrationResult result = integrate_for_checks(problem, opt.grid, extra);
    const Trajectory& traj = result.trajectory;
    if (traj.times.empty()) {
        std::cerr << "no states produced: " << result.diagnostic << "\n";
        return 1;
    }

    const double lo = opt.t1_given ? opt.t1 : traj.times.front();
    const double hi = opt.t2_given ? opt.t2 : traj.times.back();

    // Optional vertex filter: keep rows only for the named vertices.
    std::set<int> keep;
    if (!opt.x_label.empty()) keep.insert(g.index_of(opt.x_label));
    if (!opt.y_label.empty()) keep.insert(g.index_of(opt.y_label));

    CsvWriter csv(out_path(common, "verify-gradient-estimate.csv"),
                  {"x", "y", "T1", "T2", "lhs", "rhs", "margin", "status"});
    Tally tally;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t < lo - 1e-12 || t > hi + 1e-12) continue;
        const VertexField psi_now = problem.psi_at(t);
        EstimateReport report;
        if (opt.form == "li-yau") {
            report = check_li_yau_estimate(g, traj.states[i], psi_now, problem.delta, problem.m,
                                           traj.ut[i], common.tol);
        } else {
            report = check_gradient_estimate(g, traj.states[i], psi_now, problem.delta, problem.m,
                                             common.tol);
        }
        if (!keep.empty()) {
            std::erase_if(report.rows,
                          [&](const EstimateRow& row) { return keep.count(row.x) == 0; });
        }
        for (auto& row : report.rows) {
            row.t1 = row.t2 = t;
            tally.add(row.status, row.margin,
                      g.labels[static_cast<std::size_t>(row.x)] + " t=" + csv_double(t));
        }
        report_rows_to_csv(csv, g, report);
    }
    return tally.write(common, "verify-gradient-estimate",
                       "form: " + opt.form + ", graph: " + g.name);
}

int run_harnack(const CommonOptions& common, const HarnackOptions& opt) {
    const WeightedGraph g = resolve_graph(opt.graph, common);
    const PMEProblem problem = load_problem_for(g, opt.problem_file);

    std::vector<double> extra;
    if (opt.t1_given) extra.push_back(opt.t1);
    if (opt.t2_given) extra.push_back(opt.t2);
    const IntegrationResult result = integrate_for_checks(problem, opt.grid, extra);
    const Trajectory& traj = result.trajectory;
    if (traj.times.size() < 2) {
        std::cerr << "trajectory too short: " << result.diagnostic << "\n";
        return 1;
    }

    struct Query {
        int x, y;
        double t1, t2;
    };
    std::vector<Query> queries;
    if (!opt.pairs.empty()) {
        if (opt.pairs.rfind("random:", 0) != 0) {
            std::cerr << "--pairs expects random:<n>\n";
            return 1;
        }
        const int count = std::stoi(opt.pairs.substr(7));
        Rng rng(common.seed);
        const int states = static_cast<int>(traj.times.size());
        for (int i = 0; i < count; ++i) {
            const int i1 = rng.uniform_int(0, states - 2);
            const int i2 = rng.uniform_int(i1 + 1, states - 1);
            queries.push_back({rng.uniform_int(0, g.vertex_count() - 1),
                               rng.uniform_int(0, g.vertex_count() - 1), traj.times[i1],
                               traj.times[i2]});
        }
    } else {
        if (opt.x_label.empty() || opt.y_label.empty() || !opt.t1_given || !opt.t2_given) {
            std::cerr << "need --x --y --t1 --t2 or --pairs random:<n>\n";
            return 1;
        }
        queries.push_back({g.index_of(opt.x_label), g.index_of(opt.y_label), opt.t1, opt.t2});
    }

    CsvWriter csv(out_path(common, "verify-harnack.csv"),
                  {"x", "y", "T1", "T2", "lhs", "rhs", "margin", "status"});
    Tally tally;
    bool truncated = false;
    for (const auto& q : queries) {
        EstimateReport report;
        if (opt.bound == "c0") {
            double c0 = opt.c0;
            if (!opt.c0_given) {
                c0 = 0.0;
                for (const auto& p : problem.psi) c0 = std::max(c0, max_abs_on(p, q.t1, q.t2));
            }
            report = harnack_bound_bounded_source(g, traj, problem, q.x, q.y, q.t1, q.t2, c0,
                                                  opt.path_cap, common.tol);
        } else {
            report =
                harnack_bound(g, traj, problem, q.x, q.y, q.t1, q.t2, opt.path_cap, common.tol);
        }
        truncated = truncated || report.paths_truncated;
        for (const auto& row : report.rows) {
            tally.add(row.status, row.margin,
                      g.labels[static_cast<std::size_t>(row.x)] + "->" +
                          g.labels[static_cast<std::size_t>(row.y)]);
        }
        report_rows_to_csv(csv, g, report);
    }
    std::string detail = "bound: " + opt.bound + ", graph: " + g.name;
    if (truncated) detail += "\npath cap hit: reported minima are upper bounds";
    return tally.write(common, "verify-harnack", detail);
}

int run_lemma(const CommonOptions& common, const LemmaOptions& opt) {
    Rng rng(common.seed);
    CsvWriter csv(out_path(common, "verify-lemma.csv"),
                  {"instance", "c", "alpha", "t1", "t2", "lhs", "rhs", "margin", "status"});
    Tally tally;
    for (int i = 0; i < opt.random_instances; ++i) {
        const IntervalInequalityInstance inst = random_lemma_instance(rng);
        const IntervalInequalityResult r = check_interval_inequality(inst, opt.grid, common.tol);
        tally.add(r.holds ? CheckStatus::pass : CheckStatus::fail, r.margin,
                  "instance " + std::to_string(i));
        csv.write_row({std::to_string(i), csv_double(inst.c), csv_double(inst.alpha),
                       csv_double(inst.t1), csv_double(inst.t2), csv_double(r.lhs),
                       csv_double(r.rhs), csv_double(r.margin), r.holds ? "pass" : "fail"});
    }
    return tally.write(common, "verify-lemma");
}

int run_kernel(const CommonOptions& common, const KernelOptions& opt) {
    const WeightedGraph g = resolve_graph(opt.graph, common);
    const KernelMatrix kernel = heat_kernel_series(g, opt.t, opt.eps);
    const MassReport mass = mass_check(kernel, g);

    CsvWriter csv(out_path(common, "kernel.csv"),
                  {"x", "y", "p", "upper_bound", "lower_bound", "status"});
    Tally tally;
    for (int x = 0; x < kernel.n; ++x) {
        const double upper =
            opt.check_bounds ? kernel_upper_bound(g, opt.t, x, opt.c0, opt.m) : 0.0;
        for (int y = 0; y < kernel.n; ++y) {
            std::string ub_cell, lb_cell, status = "pass";
            if (opt.check_bounds) {
                const double lower = kernel_lower_bound(g, opt.t, x, y, opt.c0, opt.m);
                const double p = kernel.p(x, y);
                const double margin = std::min(upper - p, p - lower);
                const bool ok = upper - p >= -pass_tolerance(p, upper, common.tol) &&
                                p - lower >= -pass_tolerance(lower, p, common.tol);
                status = ok ? "pass" : "fail";
                ub_cell = csv_double(upper);
                lb_cell = csv_double(lower);
                tally.add(ok ? CheckStatus::pass : CheckStatus::fail, margin,
                          g.labels[static_cast<std::size_t>(x)] + "->" +
                              g.labels[static_cast<std::size_t>(y)]);
            } else {
                tally.add(CheckStatus::pass, std::numeric_limits<double>::infinity(), "");
            }
            csv.write_row({g.labels[static_cast<std::size_t>(x)],
                           g.labels[static_cast<std::size_t>(y)], csv_double(kernel.p(x, y)),
                           ub_cell, lb_cell, status});
        }
    }
    std::string detail = "t: " + csv_double(opt.t) +
                         ", truncation order: " + std::to_string(kernel.order) +
                         ", mass deviation: " + csv_double(mass.worst_deviation);
    const int rc = tally.write(common, "kernel", detail);
    return mass.within_bound ? rc : 1;
}

int run_sweep(const CommonOptions& common, const SweepOptions& opt) {
    std::vector<std::string> specs;
    std::string cur;
    for (char ch : opt.graphs + ",") {
        if (ch == ',') {
            if (!cur.empty()) specs.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (opt.check == "lemma") specs = {"-"};
    if (specs.empty()) {
        std::cerr << "sweep: --graphs is required\n";
        return 1;
    }

    CsvWriter csv(out_path(common, "sweep.csv"),
                  {"check", "graph", "pass", "fail", "vacuous", "worst_margin"});
    Tally overall;
    Rng seeds(common.seed);

    for (const auto& spec : specs) {
        long pass = 0, fail = 0, vacuous = 0;
        double worst = std::numeric_limits<double>::infinity();
        const std::uint64_t run_seed = seeds.next_u64();

        auto absorb = [&](const EstimateReport& r) {
            for (const auto& row : r.rows) {
                switch (row.status) {
                    case CheckStatus::pass: ++pass; break;
                    case CheckStatus::fail: ++fail; break;
                    case CheckStatus::vacuous: ++vacuous; continue;
                }
                worst = std::min(worst, row.margin);
            }
        };

        if (opt.check == "lemma") {
            Rng rng(run_seed);
            for (int i = 0; i < opt.samples; ++i) {
                const auto r = check_interval_inequality(random_lemma_instance(rng), 1023,
                                                         common.tol);
                (r.holds ? pass : fail) += 1;
                worst = std::min(worst, r.margin);
            }
        } else {
            GeneratorOptions gopt;
            gopt.theta = opt.check == "kernel" ? ThetaMode::degree : common.theta;
            gopt.weights = common.weights;
            gopt.seed = run_seed;
            WeightedGraph g = [&] {
                if (auto generated = graph_from_spec(spec, gopt)) return *std::move(generated);
                return load_graph_file(spec);
            }();

            if (opt.check == "identity") {
                Rng rng(run_seed);
                for (int i = 0; i < opt.samples; ++i) {
                    VertexField u(static_cast<std::size_t>(g.vertex_count()));
                    for (auto& v : u) v = rng.uniform(0.1, 10.0);
                    const double res = max_relative_residual(g, u, opt.m);
                    (res <= 1e-10 ? pass : fail) += 1;
                    worst = std::min(worst, 1e-10 - res);
                }
            } else if (opt.check == "kernel") {
                const KernelMatrix kern = heat_kernel_series(g, opt.t, 1e-10);
                absorb(check_kernel_bounds(g, kern, 0.0, opt.m, common.tol));
            } else if (opt.check == "gradient-estimate" || opt.check == "harnack") {
                // Manufactured monotone problem on this graph.
                PMEProblem p;
                p.graph = &g;
                p.m = opt.m;
                const auto n = static_cast<std::size_t>(g.vertex_count());
                p.delta.assign(n, -1.0);
                p.psi.assign(n, Poly::constant(1.0));
                p.u0.assign(n, 1.0);
                p.t_begin = 0.0;
                p.t_end = 0.4;
                const IntegrationResult ir = integrate_for_checks(p, 17, {});
                const Trajectory& traj = ir.trajectory;
                if (opt.check == "gradient-estimate") {
                    for (std::size_t i = 0; i < traj.times.size(); ++i) {
                        absorb(check_gradient_estimate(g, traj.states[i],
                                                       p.psi_at(traj.times[i]), p.delta, p.m,
                                                       common.tol));
                    }
                } else {
                    Rng rng(run_seed);
                    const int states = static_cast<int>(traj.times.size());
                    for (int i = 0; i < opt.samples; ++i) {
                        const int i1 = rng.uniform_int(0, states - 2);
                        const int i2 = rng.uniform_int(i1 + 1, states - 1);
                        absorb(harnack_bound(g, traj, p,
                                             rng.uniform_int(0, g.vertex_count() - 1),
                                             rng.uniform_int(0, g.vertex_count() - 1),
                                             traj.times[i1], traj.times[i2], 10000, common.tol));
                    }
                }
            } else {
                std::cerr << "sweep: unknown check '" << opt.check << "'\n";
                return 1;
            }
        }

        csv.write_row({opt.check, spec, std::to_string(pass), std::to_string(fail),
                       std::to_string(vacuous),
                       pass + fail > 0 ? csv_double(worst) : std::string()});
        overall.passed += pass;
        overall.failed += fail;
        overall.vacuous += vacuous;
        if (worst < overall.worst_margin) {
            overall.worst_margin = worst;
            overall.worst_where = spec;
        }
    }
    return overall.write(common, "sweep", "check: " + opt.check);
}

}  // namespace pmgcli
