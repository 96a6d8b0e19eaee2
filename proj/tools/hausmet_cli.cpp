// Command-line front end: build and serialize greedy trees, run
// approximate and exact Hausdorff queries, emit all-k partial distances,
// and compute pairwise distance matrices over prebuilt trees.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hausmet/format.hpp"
#include "hausmet/hausdorff.hpp"
#include "hausmet/io.hpp"
#include "hausmet/kpartial.hpp"
#include "hausmet/oracle.hpp"
#include "hausmet/pairwise.hpp"

namespace fs = std::filesystem;
using namespace hausmet;

namespace {

struct Options {
    double eps = 0.0;
    double alpha = 2.0;
    bool exact_greedy = false;
    std::string metric = "l2";
    std::vector<std::string> paths;
    std::string out;
    bool directed = false;
    bool symmetric = false;
    bool header = false;
    bool trace = false;
    std::uint64_t seed = 0;
    std::size_t gen_n = 100;
    std::size_t gen_dim = 2;
};

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw InputError("cannot open '" + path + "' for writing");
    return file;
}

QueryTrace make_trace() {
    QueryTrace t;
    t.on_iteration = [](const ViabilityGraph&, const IterationRecord& r) {
        std::cerr << "iter=" << r.iteration
                  << " side=" << (r.side == Side::A ? 'A' : 'B')
                  << " node=" << r.node << " radius=" << format_double(r.radius)
                  << " L=" << format_double(r.global_lower)
                  << " edges=" << r.edge_count << " max_degree=" << r.max_degree
                  << '\n';
    };
    return t;
}

int cmd_build(const Options& opt) {
    const MetricKind metric = metric_from_name(opt.metric);
    const double alpha = opt.exact_greedy ? 1.0 : opt.alpha;
    if (!opt.exact_greedy && !(opt.alpha > 1.0))
        throw ParameterError(
            "alpha must be > 1 (use --exact-greedy for the alpha = 1 mode)");
    PointSet points = read_point_file(opt.paths[0], metric);
    DistanceCounter counter;
    GreedyTree tree = build_greedy_tree(std::move(points), alpha, {}, &counter);
    save_tree(tree, opt.out);
    std::cout << "n=" << tree.size() << '\n';
    std::cout << "spread="
              << (tree.size() >= 2 ? format_double(spread(tree.points())) : "n/a")
              << '\n';
    std::cout << "height=" << tree.height() << '\n';
    std::cout << "distance_calls=" << counter.calls << '\n';
    return 0;
}

int cmd_dist(const Options& opt) {
    check_eps(opt.eps);
    const GreedyTree a = load_tree(opt.paths[0]);
    const GreedyTree b = load_tree(opt.paths[1]);
    const QueryTrace trace = make_trace();
    const QueryTrace* tp = opt.trace ? &trace : nullptr;
    const QueryResult r = opt.directed ? directed_hausdorff(a, b, opt.eps, tp)
                                       : hausdorff(a, b, opt.eps, tp);
    std::cout << format_double(r.value) << '\n';
    std::cerr << "iterations=" << r.iterations
              << " distance_calls=" << r.distance_calls
              << " max_degree=" << r.max_degree << '\n';
    return 0;
}

int cmd_kdist(const Options& opt) {
    check_eps(opt.eps);
    const GreedyTree a = load_tree(opt.paths[0]);
    const GreedyTree b = load_tree(opt.paths[1]);
    const QueryTrace trace = make_trace();
    const PartialResult r =
        k_hausdorff_all(a, b, opt.eps, opt.trace ? &trace : nullptr);
    std::ofstream file;
    std::ostream& out = open_out(file, opt.out);
    if (opt.header) out << "k,delta\n";
    for (std::size_t k = 0; k < r.deltas.size(); ++k)
        out << k << ',' << format_double(r.deltas[k]) << '\n';
    // delta_n: removing every point leaves an empty maximum
    out << r.deltas.size() << ',' << format_double(0.0) << '\n';
    std::cerr << "iterations=" << r.iterations
              << " distance_calls=" << r.distance_calls
              << " max_degree=" << r.max_degree
              << " beta=" << format_double(r.beta)
              << " buckets_finished=" << r.buckets_finished << '\n';
    return 0;
}

std::vector<std::string> expand_tree_paths(const std::vector<std::string>& in) {
    if (in.size() == 1 && fs::is_directory(in[0])) {
        std::vector<std::string> found;
        for (const auto& entry : fs::directory_iterator(in[0])) {
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                found.push_back(entry.path().string());
        }
        std::sort(found.begin(), found.end());
        return found;
    }
    return in;
}

int cmd_pairwise(const Options& opt) {
    check_eps(opt.eps);
    const std::vector<std::string> paths = expand_tree_paths(opt.paths);
    if (paths.size() < 2)
        throw InputError("pairwise needs at least 2 trees, got " +
                         std::to_string(paths.size()));
    std::vector<GreedyTree> trees;
    trees.reserve(paths.size());
    for (const std::string& p : paths) trees.push_back(load_tree(p));
    std::vector<const GreedyTree*> ptrs;
    for (const GreedyTree& t : trees) ptrs.push_back(&t);
    const PairwiseResult r = pairwise_matrix(ptrs, opt.eps, opt.symmetric);

    std::ofstream file;
    std::ostream& out = open_out(file, opt.out);
    if (opt.header) {
        for (const GreedyTree& t : trees) out << ',' << t.points().label();
        out << '\n';
    }
    for (std::size_t i = 0; i < r.matrix.size(); ++i) {
        if (opt.header) out << trees[i].points().label() << ',';
        for (std::size_t j = 0; j < r.matrix[i].size(); ++j) {
            if (j) out << ',';
            out << format_double(r.matrix[i][j]);
        }
        out << '\n';
    }
    std::cerr << "tree_loads=" << trees.size()
              << " directed_queries=" << r.directed_queries
              << " distance_calls=" << r.distance_calls << '\n';
    return 0;
}

int cmd_oracle_dist(const Options& opt) {
    const MetricKind metric = metric_from_name(opt.metric);
    PointSet a = read_point_file(opt.paths[0], metric);
    PointSet b = read_point_file(opt.paths[1], metric);
    validate(a);
    validate(b);
    DistanceCounter counter;
    const double v = opt.directed ? exact_directed(a, b, &counter)
                                  : exact_hausdorff(a, b, &counter);
    std::cout << format_double(v) << '\n';
    std::cerr << "distance_calls=" << counter.calls << '\n';
    return 0;
}

int cmd_oracle_kdist(const Options& opt) {
    const MetricKind metric = metric_from_name(opt.metric);
    PointSet a = read_point_file(opt.paths[0], metric);
    PointSet b = read_point_file(opt.paths[1], metric);
    validate(a);
    validate(b);
    const std::vector<double> partials = exact_partial_all(a, b);
    std::ofstream file;
    std::ostream& out = open_out(file, opt.out);
    if (opt.header) out << "k,delta\n";
    for (std::size_t k = 0; k < partials.size(); ++k)
        out << k << ',' << format_double(partials[k]) << '\n';
    out << partials.size() << ',' << format_double(0.0) << '\n';
    return 0;
}

int cmd_stats(const Options& opt) {
    const GreedyTree tree = load_tree(opt.paths[0]);
    std::cout << "label=" << tree.points().label() << '\n';
    std::cout << "n=" << tree.size() << '\n';
    std::cout << "dim=" << tree.points().dim() << '\n';
    std::cout << "metric=" << metric_name(tree.points().metric()) << '\n';
    std::cout << "alpha=" << format_double(tree.perm().alpha) << '\n';
    std::cout << "nodes=" << tree.nodes().size() << '\n';
    std::cout << "height=" << tree.height() << '\n';
    std::cout << "root_radius=" << format_double(tree.node(tree.root()).radius)
              << '\n';
    std::cout << "spread="
              << (tree.size() >= 2 ? format_double(spread(tree.points())) : "n/a")
              << '\n';
    return 0;
}

int cmd_gen(const Options& opt) {
    if (opt.gen_n == 0 || opt.gen_dim == 0)
        throw ParameterError("gen: n and dim must be positive");
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> flat(opt.gen_n * opt.gen_dim);
    for (double& c : flat) c = unit(rng);
    const PointSet set(std::move(flat), opt.gen_dim, MetricKind::L2);
    std::ofstream file;
    std::ostream& out = open_out(file, opt.out);
    out << "# " << opt.gen_n << " uniform points in [0,1]^" << opt.gen_dim
        << ", seed " << opt.seed << '\n';
    write_point_file(out, set);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy-tree Hausdorff distances"};
    app.require_subcommand(1);
    Options opt;

    auto* build = app.add_subcommand(
        "build", "build a greedy tree from a point file and serialize it");
    build->add_option("points", opt.paths, "input point file")
        ->required()
        ->expected(1);
    build->add_option("--alpha", opt.alpha, "greedy approximation factor (> 1)");
    build->add_flag("--exact-greedy", opt.exact_greedy,
                    "use the exact greedy permutation (alpha = 1)");
    build->add_option("--metric", opt.metric, "l2, l1 or linf");
    build->add_option("--out", opt.out, "output tree file")->required();

    auto* dist = app.add_subcommand(
        "dist", "(1+eps)-approximate Hausdorff distance of two trees");
    dist->add_option("trees", opt.paths, "two tree files")
        ->required()
        ->expected(2);
    dist->add_option("--eps", opt.eps, "approximation parameter (> 0)")
        ->required();
    dist->add_flag("--directed", opt.directed, "directed distance A -> B only");
    dist->add_flag("--trace", opt.trace, "stream per-iteration diagnostics");

    auto* kdist = app.add_subcommand(
        "kdist", "all k-partial directed distances, CSV of k,delta");
    kdist->add_option("trees", opt.paths, "two tree files")
        ->required()
        ->expected(2);
    kdist->add_option("--eps", opt.eps, "approximation parameter (> 0)")
        ->required();
    kdist->add_option("--out", opt.out, "output file (default stdout)");
    kdist->add_flag("--header", opt.header, "emit a header row");
    kdist->add_flag("--trace", opt.trace, "stream per-iteration diagnostics");

    auto* pairwise = app.add_subcommand(
        "pairwise", "distance matrix over prebuilt trees");
    pairwise->add_option("trees", opt.paths, "tree files or one directory")
        ->required();
    pairwise->add_option("--eps", opt.eps, "approximation parameter (> 0)")
        ->required();
    pairwise->add_flag("--symmetric", opt.symmetric,
                       "Hausdorff matrix (default: directed matrix)");
    pairwise->add_option("--out", opt.out, "output file (default stdout)");
    pairwise->add_flag("--header", opt.header, "label rows and columns");

    auto* oracle = app.add_subcommand("oracle", "exact brute-force reference");
    oracle->require_subcommand(1);
    auto* odist = oracle->add_subcommand("dist", "exact Hausdorff distance");
    odist->add_option("points", opt.paths, "two point files")
        ->required()
        ->expected(2);
    odist->add_option("--metric", opt.metric, "l2, l1 or linf");
    odist->add_flag("--directed", opt.directed, "directed distance A -> B only");
    auto* okdist =
        oracle->add_subcommand("kdist", "exact k-partial distances");
    okdist->add_option("points", opt.paths, "two point files")
        ->required()
        ->expected(2);
    okdist->add_option("--metric", opt.metric, "l2, l1 or linf");
    okdist->add_option("--out", opt.out, "output file (default stdout)");
    okdist->add_flag("--header", opt.header, "emit a header row");

    auto* stats = app.add_subcommand("stats", "tree diagnostics");
    stats->add_option("tree", opt.paths, "tree file")->required()->expected(1);

    auto* gen = app.add_subcommand("gen", "generate uniform test points");
    gen->add_option("--n", opt.gen_n, "number of points");
    gen->add_option("--dim", opt.gen_dim, "dimension");
    gen->add_option("--seed", opt.seed, "random seed");
    gen->add_option("--out", opt.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return cmd_build(opt);
        if (dist->parsed()) return cmd_dist(opt);
        if (kdist->parsed()) return cmd_kdist(opt);
        if (pairwise->parsed()) return cmd_pairwise(opt);
        if (oracle->parsed()) {
            if (odist->parsed()) return cmd_oracle_dist(opt);
            return cmd_oracle_kdist(opt);
        }
        if (stats->parsed()) return cmd_stats(opt);
        if (gen->parsed()) return cmd_gen(opt);
        return 2;
    } catch (const IncompatibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
