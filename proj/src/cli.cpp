#include "cachediff/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "cachediff/bench.hpp"
#include "cachediff/errors.hpp"
#include "cachediff/extraction.hpp"
#include "cachediff/oracle.hpp"
#include "cachediff/sampler.hpp"
#include "cachediff/statistics.hpp"

namespace cachediff::cli {

namespace {

enum class Format { plain, csv, json_lines };

const std::map<std::string, Format> kFormats{
    {"plain", Format::plain}, {"csv", Format::csv}, {"json-lines", Format::json_lines}};
const std::map<std::string, SwapMode> kModes{
    {"faithful", SwapMode::faithful}, {"pruned", SwapMode::pruned}};

// Unseeded runs draw from the OS and echo the seed so they can be replayed.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "seed: " << s << '\n';
    return s;
}

std::string json_string(const std::string& s) {
    return nlohmann::json(s).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

struct SampleArgs {
    Index n = 0;
    Index k = 0;
    std::optional<std::uint64_t> seed;
    SwapMode mode = SwapMode::pruned;
    Format format = Format::plain;
    bool sorted = false;
};

struct LinesArgs {
    std::string file;
    Index k = 0;
    std::optional<std::uint64_t> seed;
    Format format = Format::plain;
};

struct CodesArgs {
    Index n = 0;
    Index k = 0;
    std::string alphabet;
    std::size_t width = 0;
    std::optional<std::uint64_t> seed;
    Format format = Format::plain;
};

struct VerifyArgs {
    Index n = 0;
    Index k = 0;
    std::uint64_t trials = 0;
    double sigma = 6.0;
    bool exact = false;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    Format format = Format::plain;
};

struct BenchArgs {
    std::vector<std::string> methods;
    std::vector<Index> n_list;
    std::vector<Index> k_list;
    std::uint64_t reps = 7;
    std::optional<std::uint64_t> seed;
    std::string format = "csv";
};

int do_sample(const SampleArgs& a, std::ostream& out, std::ostream& err) {
    if (a.k > a.n) throw InvalidArgument("--k must not exceed --n");
    SeededSource rng(resolve_seed(a.seed, err));
    std::vector<Index> picked = sample_indices(a.n, a.k, rng, a.mode);
    if (a.sorted) std::sort(picked.begin(), picked.end());
    if (a.format == Format::csv) out << "index\n";
    for (Index v : picked) out << v << '\n';
    return kOk;
}

int do_lines(const LinesArgs& a, std::ostream& out, std::ostream& err) {
    const auto lines = extract::sample_lines(a.file, a.k, resolve_seed(a.seed, err));
    for (const auto& line : lines)
        out << (a.format == Format::json_lines ? json_string(line) : line) << '\n';
    return kOk;
}

int do_codes(const CodesArgs& a, std::ostream& out, std::ostream& err) {
    const auto batch =
        extract::generate_codes(a.n, a.k, resolve_seed(a.seed, err), a.alphabet, a.width);
    if (a.n > 0)
        err << "per-guess hit probability: " << fmt_double(static_cast<double>(a.k) /
                                                           static_cast<double>(a.n))
            << '\n';
    if (a.format == Format::csv) out << "code\n";
    for (const auto& code : batch.codes)
        out << (a.format == Format::json_lines ? json_string(code) : code) << '\n';
    return kOk;
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    if (a.k > a.n) throw InvalidArgument("--k must not exceed --n");
    if (!a.exact && a.trials == 0) throw InvalidArgument("--trials is required without --exact");
    if (!(a.sigma > 0.0)) throw InvalidArgument("--sigma must be positive");

    stats::UniformityVerdict v;
    std::uint64_t observations = 0;
    if (a.exact) {
        v = stats::exact_check(a.n, a.k);
        observations = oracle::falling_factorial(a.n, a.k);
    } else {
        const std::uint64_t base = resolve_seed(a.seed, err);
        const auto tally = stats::run_trials(a.n, a.k, a.trials, base, SwapMode::pruned,
                                             std::max(1u, a.threads));
        v = stats::uniformity_check(tally, a.sigma);
        observations = a.trials;
    }

    const char* method = a.exact ? "exact" : "statistical";
    if (a.format == Format::json_lines) {
        nlohmann::json rec{{"method", method},
                           {"n", a.n},
                           {"k", a.k},
                           {"observations", observations},
                           {"expected_probability", v.expected_probability},
                           {"min_frequency", v.min_frequency},
                           {"max_frequency", v.max_frequency},
                           {"worst_index", v.worst_index},
                           {"worst_deviation_sigmas", v.worst_deviation_sigmas},
                           {"chi_square", v.chi_square},
                           {"degrees_of_freedom", v.degrees_of_freedom},
                           {"pass", v.pass}};
        if (a.exact) rec["subsets_uniform"] = v.subsets_uniform;
        else rec["sigma_bound"] = a.sigma;
        out << rec.dump() << '\n';
    } else {
        out << "method: " << method << '\n'
            << "n: " << a.n << '\n'
            << "k: " << a.k << '\n'
            << (a.exact ? "sequences: " : "trials: ") << observations << '\n'
            << "expected probability: " << fmt_double(v.expected_probability) << '\n';
        constexpr Index kListLimit = 100;
        if (a.n <= kListLimit)
            for (std::size_t i = 0; i < v.frequencies.size(); ++i)
                out << "index " << i << ": " << fmt_double(v.frequencies[i]) << '\n';
        out << "frequency range: [" << fmt_double(v.min_frequency) << ", "
            << fmt_double(v.max_frequency) << "]\n";
        if (a.exact) {
            out << "subsets uniform: " << (v.subsets_uniform ? "yes" : "no") << '\n';
        } else {
            out << "worst index: " << v.worst_index << '\n'
                << "worst deviation: " << fmt_double(v.worst_deviation_sigmas)
                << " sigma (bound " << fmt_double(a.sigma) << ")\n"
                << "chi-square: " << fmt_double(v.chi_square) << " (df "
                << v.degrees_of_freedom << ", diagnostic)\n";
        }
        out << "result: " << (v.pass ? "PASS" : "FAIL") << '\n';
    }
    return v.pass ? kOk : kVerificationFailed;
}

int do_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<bench::Method> methods;
    for (const auto& m : a.methods) methods.push_back(bench::parse_method(m));
    if (a.reps == 0) throw InvalidArgument("--reps must be at least 1");
    const auto records = bench::sweep(methods, a.n_list, a.k_list, a.reps,
                                      resolve_seed(a.seed, err));
    for (const auto& r : records)
        if (r.skipped)
            err << "skipped " << bench::method_name(r.method) << " n=" << r.n << " k=" << r.k
                << ": " << *r.skipped << '\n';
    out << bench::emit_report(records, a.format == "human" ? bench::ReportFormat::human
                                                           : bench::ReportFormat::csv);
    return kOk;
}

template <typename T>
CLI::Option* add_choice(CLI::App* app, const std::string& name, T& target,
                        const std::map<std::string, T>& choices, const std::string& desc) {
    return app->add_option(name, target, desc)
        ->transform(CLI::CheckedTransformer(choices, CLI::ignore_case));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uniform sampling of k distinct items from a population of n.",
                 args.empty() ? "cachediff" : args.front()};
    app.require_subcommand(1);

    SampleArgs sample;
    auto* sample_cmd = app.add_subcommand(
        "sample",
        "Print k distinct indices from [0, n), one per line, in selection order.\n"
        "Selection order emits the draw for position n-1 first, so it is the reverse\n"
        "of the tail slice a full-array partial shuffle returns. Use --sorted for\n"
        "ascending output.");
    sample_cmd->add_option("--n", sample.n, "population size")->required();
    sample_cmd->add_option("--k", sample.k, "sample size")->required();
    sample_cmd->add_option("--seed", sample.seed, "64-bit seed (random if omitted)");
    add_choice(sample_cmd, "--mode", sample.mode, kModes, "faithful or pruned map writes")
        ->default_str("pruned");
    add_choice(sample_cmd, "--format", sample.format, kFormats, "plain, csv or json-lines")
        ->default_str("plain");
    sample_cmd->add_flag("--sorted", sample.sorted, "print indices in ascending order");

    LinesArgs lines;
    auto* lines_cmd = app.add_subcommand("lines", "Print k random lines of a file, in file order.");
    lines_cmd->add_option("--file", lines.file, "input text file")->required();
    lines_cmd->add_option("--k", lines.k, "number of lines")->required();
    lines_cmd->add_option("--seed", lines.seed, "64-bit seed (random if omitted)");
    add_choice(lines_cmd, "--format", lines.format,
               std::map<std::string, Format>{{"plain", Format::plain},
                                             {"json-lines", Format::json_lines}},
               "plain or json-lines")
        ->default_str("plain");

    CodesArgs codes;
    auto* codes_cmd =
        app.add_subcommand("codes", "Print k distinct fixed-width codes drawn from [0, n).");
    codes_cmd->add_option("--n", codes.n, "size of the integer code space")->required();
    codes_cmd->add_option("--k", codes.k, "number of codes")->required();
    codes_cmd->add_option("--alphabet", codes.alphabet, "digit characters in value order (first is zero)")
        ->required();
    codes_cmd->add_option("--width", codes.width, "characters per code")->required();
    codes_cmd->add_option("--seed", codes.seed, "64-bit seed (random if omitted)");
    add_choice(codes_cmd, "--format", codes.format, kFormats, "plain, csv or json-lines")
        ->default_str("plain");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand(
        "verify", "Check that every index is selected with probability k/n.\n"
                  "Exit 0 on pass, 3 on failure.");
    verify_cmd->add_option("--n", verify.n, "population size")->required();
    verify_cmd->add_option("--k", verify.k, "sample size")->required();
    verify_cmd->add_option("--trials", verify.trials, "number of seeded trials");
    verify_cmd->add_option("--sigma", verify.sigma, "per-index tolerance in standard deviations")
        ->capture_default_str();
    verify_cmd->add_flag("--exact", verify.exact,
                         "enumerate every random decision sequence instead of sampling");
    verify_cmd->add_option("--seed", verify.seed, "base seed; trial t uses seed + t");
    verify_cmd->add_option("--threads", verify.threads, "worker threads for trials")
        ->capture_default_str();
    add_choice(verify_cmd, "--format", verify.format,
               std::map<std::string, Format>{{"plain", Format::plain},
                                             {"json-lines", Format::json_lines}},
               "plain report or one JSON record")
        ->default_str("plain");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Time sampling methods; CSV on stdout.");
    bench_cmd
        ->add_option("--methods", bench_args.methods,
                     "cachediff_faithful,cachediff_pruned,full_index,full_shuffle,reservoir")
        ->delimiter(',')
        ->required();
    bench_cmd->add_option("--n-list", bench_args.n_list, "population sizes")
        ->delimiter(',')
        ->required();
    bench_cmd->add_option("--k-list", bench_args.k_list, "sample sizes")
        ->delimiter(',')
        ->required();
    bench_cmd->add_option("--reps", bench_args.reps, "repetitions per cell")->capture_default_str();
    bench_cmd->add_option("--seed", bench_args.seed, "64-bit seed (random if omitted)");
    bench_cmd->add_option("--format", bench_args.format, "csv or human")
        ->check(CLI::IsMember({"csv", "human"}))
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*sample_cmd) return do_sample(sample, out, err);
        if (*lines_cmd) return do_lines(lines, out, err);
        if (*codes_cmd) return do_codes(codes, out, err);
        if (*verify_cmd) return do_verify(verify, out, err);
        if (*bench_cmd) return do_bench(bench_args, out, err);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kRuntime;
    }
    return kUsage;
}

} // namespace cachediff::cli
