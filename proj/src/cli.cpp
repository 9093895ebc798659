#include "popstack/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "popstack/avoidance.hpp"
#include "popstack/characterize.hpp"
#include "popstack/pair_io.hpp"
#include "popstack/popstack.hpp"

namespace popstack::cli {

namespace {

std::string join_one_based(const std::vector<std::size_t>& indices) {
    std::string out;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i != 0) out += ' ';
        out += std::to_string(indices[i] + 1);
    }
    return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw InvalidInput("cannot write " + path);
    file << text;
    if (!file) throw InvalidInput("write failed for " + path);
}

EnumerationLimits limits_with_jobs(unsigned jobs) {
    EnumerationLimits limits = EnumerationLimits::from_env();
    limits.jobs = jobs;
    return limits;
}

std::optional<AvoidancePair> builtin_pair(std::size_t k) {
    if (k == 1) return one_pass_pair();
    if (k == 2) return two_pass_pair();
    return std::nullopt;
}

int sort_trace_command(const std::string& text, std::optional<std::size_t> k, std::ostream& out) {
    const Permutation p = Permutation::parse(text);
    const SortTrace trace = sort_trace(p, k);
    out << render_trace(trace);
    const Permutation& result = trace.final_permutation(p);
    const bool sorted = result.is_sorted();
    out << (sorted ? "sorted" : "not sorted") << " after " << trace.passes.size()
        << (trace.passes.size() == 1 ? " pass" : " passes") << ": " << result.to_compact_string() << '\n';
    return sorted ? kSuccess : kNegative;
}

int check_command(const std::string& text, const std::string& pair_path, std::ostream& out) {
    const Permutation p = Permutation::parse(text);
    const AvoidancePair pair = read_pair_file(pair_path);
    const auto witness = two_contains(p, pair);
    if (!witness) {
        out << "2-avoids\n";
        return kSuccess;
    }
    out << "2-contains\n"
        << "witness: pattern " << witness->matched_pattern.to_string() << " at positions "
        << join_one_based(witness->gamma.indices) << " (values "
        << subpermutation_at(p, witness->gamma).to_string() << ")\n";
    return kNegative;
}

struct ConstructArgs {
    std::size_t k = 2;
    std::optional<std::size_t> omega1_cap;
    std::optional<std::size_t> omega2_cap;
    std::string prior;
    std::string output;
    unsigned jobs = 0;
};

int construct_command(const ConstructArgs& args, std::ostream& out) {
    ConstructionConfig config;
    config.k = args.k;
    config.omega1_cap = args.omega1_cap;
    config.omega2_cap = args.omega2_cap;
    if (!args.prior.empty()) config.prior_pair = read_pair_file(args.prior);

    const Construction c = construct(config, limits_with_jobs(args.jobs));
    std::vector<std::string> comments = {
        "k = " + std::to_string(config.k),
        "f_max = " + std::to_string(c.bounds.f_max) + ", 3*f_max = " + std::to_string(c.bounds.omega1_len) +
            ", C = " + std::to_string(c.bounds.c),
        "Omega1 cap = " + std::to_string(c.omega1_cap) + (c.omega1_exact() ? " (exact)" : " (truncated)"),
        "Omega2 cap = " + std::to_string(c.omega2_cap) + (c.omega2_exact() ? " (exact)" : " (truncated)"),
        "|F| = " + std::to_string(c.pair.forbidden.size()) + ", |G| = " + std::to_string(c.pair.saving.size()),
    };
    emit(format_pair(c.pair, comments), args.output, out);
    return kSuccess;
}

int reduce_command(const std::string& input, const std::string& output, std::size_t check_bound,
                   unsigned jobs, std::ostream& out) {
    const AvoidancePair pair = read_pair_file(input);
    ReduceOptions options;
    options.check_bound = check_bound;
    options.limits = limits_with_jobs(jobs);
    const AvoidancePair reduced = reduce_pair(pair, options);
    std::vector<std::string> comments = {
        "reduced from |F| = " + std::to_string(pair.forbidden.size()) + ", |G| = " +
            std::to_string(pair.saving.size()) + " to |F| = " + std::to_string(reduced.forbidden.size()) +
            ", |G| = " + std::to_string(reduced.saving.size()),
    };
    if (check_bound > 0) {
        comments.push_back("2-avoidance class unchanged for lengths <= " + std::to_string(check_bound));
    }
    emit(format_pair(reduced, comments), output, out);
    return kSuccess;
}

int count_command(std::size_t k, std::size_t n_max, const std::string& pair_path, unsigned jobs,
                  std::ostream& out) {
    const EnumerationLimits limits = limits_with_jobs(jobs);
    limits.require(n_max, "counting");
    std::optional<AvoidancePair> pair =
        pair_path.empty() ? builtin_pair(k) : std::optional<AvoidancePair>(read_pair_file(pair_path));
    if (pair) {
        out << verify_pair(*pair, k, n_max, limits).to_csv();
        return kSuccess;
    }
    // no pair known for this k: only the sortable side
    out << "n,av2_count,sortable_count,mismatches\n";
    for (std::size_t n = 1; n <= n_max; ++n) {
        out << n << ",," << count_sortable(k, n, limits) << ",\n";
    }
    return kSuccess;
}

int verify_command(const std::string& pair_path, std::size_t k, std::size_t n_max, unsigned jobs,
                   std::ostream& out, std::ostream& err) {
    const AvoidancePair pair = read_pair_file(pair_path);
    const VerifyReport report = verify_pair(pair, k, n_max, limits_with_jobs(jobs));
    out << report.to_csv();
    constexpr std::size_t kShown = 20;
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.mismatches.size() && i < kShown; ++i) {
            err << "mismatch: " << row.mismatches[i].to_string() << '\n';
        }
        if (row.mismatches.size() > kShown) {
            err << "... " << row.mismatches.size() - kShown << " more at n = " << row.n << '\n';
        }
    }
    return report.ok() ? kSuccess : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deterministic pop-stack sorting and 2-avoidance characterizations", "popstack"};
    app.require_subcommand(1);

    std::string perm_text;
    std::string pair_path;
    std::string output;
    std::optional<std::size_t> k_opt;
    std::size_t k = 2;
    std::size_t n_max = 8;
    std::size_t check_bound = 6;
    unsigned jobs = 0;
    ConstructArgs construct_args;

    auto* trace_cmd = app.add_subcommand("sort-trace", "Show each pass of the pop stack");
    trace_cmd->add_option("permutation", perm_text, "e.g. \"4 1 3 5 2\" or 41352")->required();
    trace_cmd->add_option("--k", k_opt, "Stop after k passes; exit 1 if still unsorted");

    auto* check_cmd = app.add_subcommand("check", "Test 2-avoidance of a pair file");
    check_cmd->add_option("permutation", perm_text)->required();
    check_cmd->add_option("pair-file", pair_path)->required();

    auto* construct_cmd = app.add_subcommand("construct", "Build (Omega1, Omega2) for k passes");
    construct_cmd->add_option("--k", construct_args.k)->check(CLI::PositiveNumber);
    construct_cmd->add_option("--omega1-cap", construct_args.omega1_cap, "Default 3*f_max");
    construct_cmd->add_option("--omega2-cap", construct_args.omega2_cap, "Default C = 3^(k+2)*f_max");
    construct_cmd->add_option("--prior", construct_args.prior, "Pair file for k-1 passes (default F1)");
    construct_cmd->add_option("-o,--output", construct_args.output);
    construct_cmd->add_option("--jobs", construct_args.jobs);

    auto* reduce_cmd = app.add_subcommand("reduce", "Remove redundant patterns from a pair file");
    reduce_cmd->add_option("pair-file", pair_path)->required();
    reduce_cmd->add_option("-o,--output", output);
    reduce_cmd->add_option("--check-bound", check_bound, "Confirm unchanged class up to this length (0 = off)")
        ->capture_default_str();
    reduce_cmd->add_option("--jobs", jobs);

    auto* count_cmd = app.add_subcommand("count", "Count sortable and 2-avoiding permutations by length");
    count_cmd->add_option("--k", k)->check(CLI::NonNegativeNumber);
    count_cmd->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
    count_cmd->add_option("--pair", pair_path, "Pair file (built-in pair for k = 1, 2)");
    count_cmd->add_option("--jobs", jobs);

    auto* verify_cmd = app.add_subcommand("verify", "Compare Av2(pair) with the k-sortable permutations");
    verify_cmd->add_option("pair-file", pair_path)->required();
    verify_cmd->add_option("--k", k)->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--jobs", jobs);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        if (*trace_cmd) return sort_trace_command(perm_text, k_opt, out);
        if (*check_cmd) return check_command(perm_text, pair_path, out);
        if (*construct_cmd) return construct_command(construct_args, out);
        if (*reduce_cmd) return reduce_command(pair_path, output, check_bound, jobs, out);
        if (*count_cmd) return count_command(k, n_max, pair_path, jobs, out);
        if (*verify_cmd) return verify_command(pair_path, k, n_max, jobs, out, err);
    } catch (const BudgetExceeded& e) {
        err << "refused: " << e.what() << '\n';
        return kBudgetRefused;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ArithmeticOverflow& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace popstack::cli
