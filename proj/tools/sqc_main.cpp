#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqc/pipeline.hpp"

namespace {

// Exit codes: 0 success, 2 usage, 3 I/O, 4 degenerate input.
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

void write_or_print(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw sqc::IoError("cannot write '" + path + "'");
    out << content;
}

std::vector<std::size_t> parse_k_list(const std::string& spec) {
    std::vector<std::size_t> ks;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t comma = spec.find(',', pos);
        const std::string tok =
            spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (tok.empty())
            throw sqc::InvalidInput("empty entry in --colors list");
        const long v = std::stol(tok);
        if (v < 1 || v > 256)
            throw sqc::InvalidInput("--colors entries must be in 1..256");
        ks.push_back(static_cast<std::size_t>(v));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return ks;
}

struct CommonFlags {
    double rho = 0.001;
    double r = 3.0;
    std::size_t iters = 0;
    std::uint64_t seed = 42;
    std::string seeding = "dsq";

    void add_to(CLI::App& cmd) {
        cmd.add_option("--rho", rho, "Learning rate")->check(CLI::PositiveNumber);
        cmd.add_option("--r", r, "Norm degree (>= 2)");
        cmd.add_option("--iters", iters,
                       "Iteration budget (0 = 50 passes, capped at 5e6)");
        cmd.add_option("--seed", seed, "Random seed");
        cmd.add_option("--seeding", seeding, "Seeding strategy")
            ->check(CLI::IsMember({"uniform", "dsq"}));
    }

    sqc::QuantizerConfig config(std::size_t k, std::size_t trace_every) const {
        sqc::QuantizerConfig cfg;
        cfg.k = k;
        cfg.rho = rho;
        cfg.r = r;
        cfg.max_iters = iters;
        cfg.seed = seed;
        cfg.seeding = sqc::seeding_from_name(seeding);
        cfg.trace_every = trace_every;
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic color quantization: palette optimization and "
                 "lossy image compression"};
    app.require_subcommand(1);

    // compress
    auto* compress = app.add_subcommand(
        "compress", "Quantize one image and write an indexed PNG");
    std::string c_input, c_out, c_report;
    std::size_t c_colors = 4, c_trace_every = 0;
    CommonFlags c_flags;
    compress->add_option("--input", c_input, "Input image (PNG or JPEG)")
        ->required();
    compress->add_option("--colors", c_colors, "Palette size K")
        ->check(CLI::Range(1, 256));
    compress->add_option("--out", c_out, "Output indexed PNG path");
    compress->add_option("--report", c_report,
                         "Report JSON path (stdout if omitted)");
    compress->add_option("--trace-every", c_trace_every,
                         "Objective trace cadence (0 = endpoints only)");
    c_flags.add_to(*compress);

    // benchmark
    auto* benchmark = app.add_subcommand(
        "benchmark", "Sweep palette sizes over a set of images");
    std::vector<std::string> b_inputs;
    std::string b_colors = "4,8,12,24,36";
    std::string b_report, b_format = "csv";
    std::size_t b_jobs = 1;
    CommonFlags b_flags;
    benchmark->add_option("--inputs", b_inputs, "Input images")
        ->required()
        ->expected(-1);
    benchmark->add_option("--colors", b_colors, "Comma list of K values");
    benchmark->add_option("--format", b_format, "Table format")
        ->check(CLI::IsMember({"csv", "md", "json"}));
    benchmark->add_option("--report", b_report,
                          "Output path (stdout if omitted)");
    benchmark->add_option("--jobs", b_jobs, "Concurrent cells")
        ->check(CLI::PositiveNumber);
    b_flags.add_to(*benchmark);

    // baseline
    auto* baseline = app.add_subcommand(
        "baseline", "Compare SQ against Lloyd's K-Means on one image");
    std::string l_input, l_report;
    std::size_t l_colors = 4;
    CommonFlags l_flags;
    baseline->add_option("--input", l_input, "Input image")->required();
    baseline->add_option("--colors", l_colors, "Palette size K")
        ->check(CLI::Range(1, 256));
    baseline->add_option("--report", l_report,
                         "Report JSON path (stdout if omitted)");
    l_flags.add_to(*baseline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (compress->parsed()) {
            const sqc::QuantizationReport report = sqc::compress_file(
                c_input, c_out, c_flags.config(c_colors, c_trace_every));
            for (const sqc::TracePoint& p : report.trace)
                std::fprintf(stderr, "iter %zu  F(y) = %.9g\n", p.iteration,
                             p.objective);
            write_or_print(sqc::report_to_json(report), c_report);
        } else if (benchmark->parsed()) {
            const std::vector<std::size_t> ks = parse_k_list(b_colors);
            std::vector<std::filesystem::path> paths(b_inputs.begin(),
                                                     b_inputs.end());
            const sqc::BenchmarkTable table = sqc::run_benchmark(
                paths, ks, b_flags.config(ks.front(), 0), b_jobs);

            bool any_ok = false;
            for (const auto& row : table.cells)
                for (const auto& cell : row)
                    any_ok |= cell.mse.has_value();

            const std::string out = b_format == "csv" ? table_to_csv(table)
                                    : b_format == "md"
                                        ? table_to_markdown(table)
                                        : table_to_json(table);
            write_or_print(out, b_report);
            if (!any_ok) {
                std::cerr << "benchmark: every cell failed\n";
                return kExitIo;
            }
        } else if (baseline->parsed()) {
            const sqc::BaselineComparison cmp =
                sqc::compare_baseline(l_input, l_flags.config(l_colors, 0));
            write_or_print(sqc::comparison_to_json(cmp), l_report);
        }
    } catch (const sqc::DegenerateSeeding& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const sqc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const sqc::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
