// dyadic: command-line front end for the dimension function of F(c).
//
//   dyadic dim 001 | 000(110) | 3/28
//   dyadic graph --out plateaus.csv [--svg plot.svg] [--cache cache.json]
//   dyadic classify 000111
//   dyadic matrix 001 --out a.json
//   dyadic verify [--only NAME]
//
// Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 convergence or
// resource limit, 4 I/O failure.

#include "dyadic/acceptance.hpp"
#include "dyadic/dyadic.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

namespace {

using namespace dyadic;

enum Exit { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kLimit = 3, kIo = 4 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double tol = 1e-9;
    std::size_t max_window = kDefaultMaxWindow;
    std::size_t max_len = 8;
    unsigned max_level = 3;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string cache_path;
    bool json = false;
    bool stats = false;

    DimensionOptions options() const {
        DimensionOptions o;
        o.tol = tol;
        o.max_window = max_window;
        o.workers = workers;
        return o;
    }

    void validate() const {
        if (!(tol > 0) || max_window == 0 || max_len == 0 || max_level == 0 || workers == 0)
            throw DomainError("all numeric options must be positive");
        if (max_window < max_len) throw DomainError("--max-window must be at least --max-len");
    }
};

std::size_t window_from_env() {
    const char* env = std::getenv("DYADIC_MAX_WINDOW");
    if (!env || !*env) return kDefaultMaxWindow;
    try {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(env, &pos);
        if (pos == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("DYADIC_MAX_WINDOW is not a positive integer: '") + env + "'");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string decimal(const Fraction& f) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10f", f.to_double());
    return buf;
}

// ---------------------------------------------------------------------------

int cmd_dim(const std::string& input, const RunConfig& cfg) {
    const EPWord c = parse_parameter(input);
    DimensionResult r;
    try {
        r = phi(c, cfg.options());
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\nbest enclosure of rho: [" << e.lower << ", " << e.upper << "]\n";
        return kLimit;
    }
    if (cfg.json) {
        std::cout << dimension_json(input, r).dump(2) << '\n';
        return kOk;
    }
    std::cout << "input: " << input << " = " << c.str() << '\n';
    std::cout << "level: " << r.level.str() << (r.empty ? " (F(c) is empty)" : "") << '\n';
    if (r.representative) std::cout << "representative: " << r.representative->str() << '\n';
    if (!r.reduced_e1.empty()) std::cout << "reduced word: " << r.reduced_e1.str() << '\n';
    std::cout << "dim: " << format_dim(r.dim()) << "  [" << format_dim(r.dim_lower) << ", " << format_dim(r.dim_upper)
              << "]\n";
    if (r.plateau) {
        const auto& p = *r.plateau;
        std::cout << "plateau: [" << p.left.str() << ", " << p.right.str() << "] = [" << decimal(p.left) << ", "
                  << decimal(p.right) << "]\n";
    } else if (!r.level.is_above_all()) {
        std::cout << "plateau: none found (bounds from truncations)\n";
    }
    return kOk;
}

int cmd_graph(const RunConfig& cfg, const std::string& out, const std::string& svg) {
    SpectralCache cache;
    std::atomic<std::size_t> runs{0};
    DimensionOptions opt = cfg.options();
    opt.spectral_runs = &runs;
    bool cache_loaded = false;
    if (!cfg.cache_path.empty()) {
        cache_loaded = load_cache(cfg.cache_path, cache, cfg.tol);
        opt.cache = &cache;
    }
    const auto ps = plateaus(cfg.max_len, cfg.max_level, opt);
    const std::string csv = plateaus_csv(ps);
    write_file(out, csv);
    if (!svg.empty()) write_file(svg, plateaus_svg(parse_plateaus_csv(csv), zero_threshold_upper(64).to_double()));
    if (!cfg.cache_path.empty()) {
        try {
            save_cache(cfg.cache_path, cache, cfg.tol);
        } catch (const std::runtime_error& e) {
            throw IoError(e.what());
        }
    }
    if (cfg.stats)
        std::cerr << "plateaus: " << ps.size() << "\nspectral radii computed: " << runs.load()
                  << "\ncache: " << (cfg.cache_path.empty() ? "off" : cache_loaded ? "loaded" : "new") << '\n';
    return kOk;
}

int cmd_classify(const std::string& input) {
    const Word s(input);
    if (!s.contains_one()) throw DomainError("not a valid c: '" + input + "' has no 1");
    std::cout << "word: " << s.str() << '\n';
    std::cout << "shift-bounded: " << (is_shift_bounded(s) ? "yes" : "no") << '\n';
    const LevelClass level = level_of(s);
    std::cout << "level: " << level.str() << '\n';
    if (level.is_above_all()) return kOk;

    const auto report = minimal_prefix(s);
    const Word target = f_power(Word("1"), level.level);
    if (!report.found()) {
        std::cout << "minimal: no\nm: not found up to " << report.searched_up_to << '\n';
        return kOk;
    }
    std::cout << "minimal: " << (*report.m == s.size() && s.back() ? "yes" : "no") << '\n';
    std::cout << "m: " << *report.m << '\n';
    std::cout << "minimal prefix: " << report.prefix.str() << '\n';
    std::cout << "chain:";
    const auto chain = p_chain(report.prefix, target);
    for (std::size_t k = 0; k < chain.size(); ++k) std::cout << (k ? " -> " : " ") << chain[k].str();
    std::cout << '\n';
    return kOk;
}

int cmd_matrix(const std::string& input, const std::string& out, const RunConfig& cfg) {
    const auto ts = build_sft(Word(input), cfg.max_window);
    const std::string text = ts.to_json();
    if (out.empty() || out == "-") std::cout << text;
    else write_file(out, text);
    std::cerr << ts.size() << " states, " << ts.edge_count() << " edges\n";
    return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& only) {
    const int failures = acceptance::run(cfg.options(), std::cout, only);
    if (failures < 0) {
        std::cerr << "error: no check named '" << only << "'\n";
        return kBadInput;
    }
    return failures == 0 ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hausdorff dimension of dyadically badly approximable sets F(c)"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string input, out, svg, only;
    bool window_given = false;

    auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", cfg.tol, "dimension tolerance")->capture_default_str(); };
    auto add_window = [&](CLI::App* sub) {
        sub->add_option_function<std::size_t>(
               "--max-window", [&](std::size_t w) { cfg.max_window = w, window_given = true; },
               "largest window length (default 24, or DYADIC_MAX_WINDOW)");
    };

    auto* dim = app.add_subcommand("dim", "dimension and plateau of a parameter");
    dim->add_option("input", input, "binary word, pre(per) word or fraction p/q")->required();
    add_tol(dim);
    add_window(dim);
    dim->add_flag("--json", cfg.json, "machine-readable output");

    auto* graph = app.add_subcommand("graph", "enumerate plateaus to CSV");
    graph->add_option("--out", out, "CSV output path")->required();
    graph->add_option("--svg", svg, "also write a step plot");
    graph->add_option("--max-len", cfg.max_len, "longest e_1-minimal word")->capture_default_str();
    graph->add_option("--max-level", cfg.max_level, "highest level")->capture_default_str();
    graph->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
    graph->add_option("--cache", cfg.cache_path, "spectral cache file");
    graph->add_flag("--stats", cfg.stats, "report how many spectral radii were computed");
    add_tol(graph);
    add_window(graph);

    auto* classify = app.add_subcommand("classify", "shift-boundedness, level and minimal prefix of a word");
    classify->add_option("input", input, "binary word")->required();

    auto* matrix = app.add_subcommand("matrix", "export the transition system of a word as JSON");
    matrix->add_option("input", input, "binary word starting with 0 and ending with 1")->required();
    matrix->add_option("--out", out, "output path (stdout if omitted)");
    add_window(matrix);

    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_option("--only", only, "run a single check by name");
    add_tol(verify);
    add_window(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (!window_given) cfg.max_window = window_from_env();
        cfg.validate();
        if (*dim) return cmd_dim(input, cfg);
        if (*graph) return cmd_graph(cfg, out, svg);
        if (*classify) return cmd_classify(input);
        if (*matrix) return cmd_matrix(input, out, cfg);
        if (*verify) return cmd_verify(cfg, only);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\nbest enclosure of rho: [" << e.lower << ", " << e.upper << "]\n";
        return kLimit;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kLimit;
    } catch (const DecodeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kOk;
}
