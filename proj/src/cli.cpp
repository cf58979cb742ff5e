#include "aivip/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "aivip/ancestral_iv.hpp"
#include "aivip/estimator.hpp"
#include "aivip/graph_io.hpp"
#include "aivip/separation.hpp"
#include "aivip/simulation.hpp"

namespace aivip {

namespace {

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

bool has_circles(const MixedGraph& g) {
    for (auto [i, j] : g.edges())
        if (g.mark_at(i, j) == Mark::Circle || g.mark_at(j, i) == Mark::Circle) return true;
    return false;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

SimVariant variant_from(const std::string& name) {
    if (name == "consistent") return SimVariant::Consistent;
    if (name == "paper_literal") return SimVariant::PaperLiteral;
    throw CLI::ValidationError("--variant", "expected 'consistent' or 'paper_literal'");
}

SimGroup group_from(const std::string& name) {
    if (name == "I") return SimGroup::I;
    if (name == "II") return SimGroup::II;
    throw CLI::ValidationError("--group", "expected 'I' or 'II'");
}

std::string format_path(const MixedGraph& g, const Path& p) {
    std::ostringstream out;
    for (size_t t = 0; t < p.size(); ++t) {
        if (t) {
            const Mark a = g.mark_at(p[t - 1], p[t]);
            const Mark b = g.mark_at(p[t], p[t - 1]);
            const char left = a == Mark::Arrow ? '<' : (a == Mark::Circle ? 'o' : '-');
            const char right = b == Mark::Arrow ? '>' : (b == Mark::Circle ? 'o' : '-');
            out << ' ' << left << '-' << right << ' ';
        }
        out << g.name(p[t]);
    }
    return out.str();
}

struct CliOptions {
    // simulate
    std::string group = "I";
    int n = 10000;
    std::uint64_t seed = 1;
    std::string variant = "consistent";
    std::string out_path;
    int precision = 6;
    // graph inputs
    std::string graph_path;
    std::string latent_csv;
    std::string x, y;
    std::string z_csv;
    // data / estimation
    std::string data_path;
    std::string treatment, outcome, iv;
    std::string method;
    double alpha = 0.05;
    int max_cond_size = -1;
    bool possible_dsep = false;
    // benchmark
    std::string groups_csv = "I";
    std::string sizes_csv = "10000";
    std::string methods_csv = "aivip,tsls,tslsciv";
    int reps = 20;
    int bench_max_cond = 3;
};

LearnerConfig learner_config(const CliOptions& opt, int max_cond) {
    LearnerConfig cfg;
    cfg.alpha = opt.alpha;
    cfg.max_cond_size = max_cond;
    cfg.use_possible_dsep = opt.possible_dsep;
    return cfg;
}

int dispatch(const CLI::App& app, const CliOptions& opt, std::ostream& out) {
    out.precision(opt.precision);

    if (app.got_subcommand("simulate")) {
        SimSpec spec;
        spec.group = group_from(opt.group);
        spec.n = opt.n;
        spec.seed = opt.seed;
        spec.variant = variant_from(opt.variant);
        const Dataset data = generate(spec);
        std::ostringstream text;
        write_csv(data, text, opt.precision);
        write_text(opt.out_path, text.str(), out);
        return 0;
    }

    if (app.got_subcommand("project")) {
        const MixedGraph dag = read_graph_file(opt.graph_path);
        const auto latent = split_list(opt.latent_csv);
        std::vector<std::string> observed;
        for (const auto& name : dag.names())
            if (std::find(latent.begin(), latent.end(), name) == latent.end())
                observed.push_back(name);
        const MixedGraph mag = dag_to_mag({dag, observed, latent});
        write_text(opt.out_path, format_graph(mag), out);
        return 0;
    }

    if (app.got_subcommand("msep")) {
        const MixedGraph g = read_graph_file(opt.graph_path);
        if (has_circles(g))
            throw std::invalid_argument("msep requires a DAG or MAG (no circle marks)");
        const int x = g.index(opt.x), y = g.index(opt.y);
        const auto z = node_indices(g, split_list(opt.z_csv));
        const SepResult res = is_valid(g, GraphKind::Dag) ? d_separated(g, x, y, z)
                                                          : m_separated(g, x, y, z);
        if (res.separated)
            out << "SEPARATED\n";
        else
            out << "CONNECTED " << format_path(g, *res.witness) << '\n';
        return 0;
    }

    if (app.got_subcommand("discover")) {
        const MixedGraph g = read_graph_file(opt.graph_path);
        const IvRoles roles{opt.treatment, opt.outcome, opt.iv};
        const auto z = has_circles(g) ? conditioning_set_pag(g, roles)
                                      : conditioning_set_mag(g, roles);
        for (size_t t = 0; t < z.size(); ++t) out << (t ? " " : "") << z[t];
        out << '\n';
        return 0;
    }

    if (app.got_subcommand("learn")) {
        const Dataset data = read_csv_file(opt.data_path);
        const FisherZTest test(data, opt.alpha);
        const MixedGraph pag = learn_pag(test, learner_config(opt, opt.max_cond_size));
        write_text(opt.out_path, format_graph(pag), out);
        return 0;
    }

    if (app.got_subcommand("estimate")) {
        const Dataset data = read_csv_file(opt.data_path);
        const IvRoles roles{opt.treatment, opt.outcome, opt.iv};
        EstimateResult res;
        if (!opt.method.empty()) {
            if (opt.method == "aivip") {
                res = aivip_estimate(data, roles, learner_config(opt, opt.max_cond_size));
            } else if (opt.method == "tsls") {
                res = two_stage(data, roles, {});
                res.method = "tsls";
            } else if (opt.method == "tslsciv") {
                std::vector<std::string> z;
                for (const auto& c : data.columns)
                    if (c != roles.treatment && c != roles.outcome && c != roles.iv)
                        z.push_back(c);
                res = two_stage(data, roles, z);
                res.method = "tslsciv";
            } else {
                throw CLI::ValidationError("--method", "expected aivip, tsls or tslsciv");
            }
        } else {
            res = two_stage(data, roles, split_list(opt.z_csv));
        }
        out << "beta_hat=" << res.beta_hat << '\n';
        out << "z=";
        for (size_t t = 0; t < res.z_used.size(); ++t) out << (t ? " " : "") << res.z_used[t];
        out << '\n';
        out << "sigma_sw=" << res.sigma_sw << '\n';
        if (res.sigma_sy) out << "sigma_sy=" << *res.sigma_sy << '\n';
        out << "method=" << res.method << '\n';
        return 0;
    }

    if (app.got_subcommand("benchmark")) {
        BenchmarkConfig cfg;
        for (const auto& s : split_list(opt.groups_csv)) cfg.groups.push_back(group_from(s));
        for (const auto& s : split_list(opt.sizes_csv)) cfg.sizes.push_back(std::stoi(s));
        for (const auto& s : split_list(opt.methods_csv)) cfg.methods.push_back(method_from_name(s));
        cfg.replications = opt.reps;
        cfg.seed = opt.seed;
        cfg.variant = variant_from(opt.variant);
        cfg.learner.alpha = opt.alpha;
        cfg.learner.max_cond_size = opt.bench_max_cond;
        const BenchmarkReport report = run_benchmark(cfg);
        write_text(opt.out_path, report.to_csv(opt.precision), out);
        return 0;
    }

    throw CLI::ValidationError("", "no subcommand given");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliOptions opt;
    CLI::App app{"Ancestral-IV conditioning-set discovery and causal effect estimation"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "Generate a benchmark dataset as CSV");
    sim->add_option("--group", opt.group, "Benchmark group (I or II)");
    sim->add_option("--n", opt.n, "Sample size")->check(CLI::PositiveNumber);
    sim->add_option("--seed", opt.seed, "RNG seed");
    sim->add_option("--variant", opt.variant, "consistent or paper_literal");
    sim->add_option("--out", opt.out_path, "Output CSV path (default stdout)");
    sim->add_option("--precision", opt.precision, "Significant digits");

    auto* proj = app.add_subcommand("project", "Project a latent DAG onto its MAG");
    proj->add_option("--graph", opt.graph_path, "DAG in text graph format")->required();
    proj->add_option("--latent", opt.latent_csv, "Comma-separated latent nodes")->required();
    proj->add_option("--out", opt.out_path, "Output path (default stdout)");

    auto* msep = app.add_subcommand("msep", "Query d-/m-separation on a DAG or MAG");
    msep->add_option("--graph", opt.graph_path, "Graph in text graph format")->required();
    msep->add_option("--x", opt.x, "First node")->required();
    msep->add_option("--y", opt.y, "Second node")->required();
    msep->add_option("--z", opt.z_csv, "Comma-separated conditioning set");

    auto* disc = app.add_subcommand("discover", "Conditioning set for an ancestral IV");
    disc->add_option("--graph", opt.graph_path, "MAG or PAG in text graph format")->required();
    disc->add_option("--treatment", opt.treatment, "Treatment node")->required();
    disc->add_option("--outcome", opt.outcome, "Outcome node")->required();
    disc->add_option("--iv", opt.iv, "Ancestral IV node")->required();

    auto* learn = app.add_subcommand("learn", "Learn a PAG from data");
    learn->add_option("--data", opt.data_path, "CSV dataset")->required();
    learn->add_option("--alpha", opt.alpha, "Significance level");
    learn->add_option("--max-cond-size", opt.max_cond_size, "Cap on conditioning-set size");
    learn->add_flag("--possible-dsep", opt.possible_dsep, "Enable Possible-D-SEP pruning");
    learn->add_option("--out", opt.out_path, "Output path (default stdout)");

    auto* est = app.add_subcommand("estimate", "Estimate the treatment effect");
    est->add_option("--data", opt.data_path, "CSV dataset")->required();
    est->add_option("--treatment", opt.treatment, "Treatment column")->required();
    est->add_option("--outcome", opt.outcome, "Outcome column")->required();
    est->add_option("--iv", opt.iv, "IV column")->required();
    est->add_option("--z", opt.z_csv, "Comma-separated conditioning columns");
    est->add_option("--method", opt.method, "aivip, tsls or tslsciv");
    est->add_option("--alpha", opt.alpha, "Learner significance level (aivip)");
    est->add_option("--max-cond-size", opt.max_cond_size, "Learner conditioning cap (aivip)");
    est->add_option("--precision", opt.precision, "Significant digits");

    auto* bench = app.add_subcommand("benchmark", "Reproduce the synthetic bias matrix");
    bench->add_option("--groups", opt.groups_csv, "Comma-separated groups");
    bench->add_option("--sizes", opt.sizes_csv, "Comma-separated sample sizes");
    bench->add_option("--methods", opt.methods_csv, "Comma-separated methods");
    bench->add_option("--reps", opt.reps, "Replications per cell")->check(CLI::PositiveNumber);
    bench->add_option("--seed", opt.seed, "Base RNG seed");
    bench->add_option("--variant", opt.variant, "consistent or paper_literal");
    bench->add_option("--alpha", opt.alpha, "Learner significance level");
    bench->add_option("--max-cond-size", opt.bench_max_cond, "Learner conditioning cap");
    bench->add_option("--out", opt.out_path, "Output CSV path (default stdout)");
    bench->add_option("--precision", opt.precision, "Significant digits");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << e.what() << '\n' << app.help();
        return 2;
    }
    try {
        return dispatch(app, opt, out);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace aivip
