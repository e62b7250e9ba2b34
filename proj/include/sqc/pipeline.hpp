#pragma once

#include <optional>
#include <string>

#include "sqc/image.hpp"
#include "sqc/optimizer.hpp"

namespace sqc {

struct QuantizationReport {
    std::string input_path;
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t distinct_colors_before = 0;
    std::size_t k = 0;
    double rho = 0.0;
    double r = 0.0;
    std::uint64_t seed = 0;
    std::size_t iters = 0;
    std::string seeding;
    std::vector<std::string> palette_hex;
    double final_objective = 0.0;   // weighted convention
    double transport_value = 0.0;   // unweighted pixel sum
    double mse = 0.0;
    std::size_t original_bytes = 0;
    std::size_t compressed_bytes = 0;
    double wall_time_ms = 0.0;
    std::vector<TracePoint> trace;
};

std::string report_to_json(const QuantizationReport& report, int indent = 2);

// Quantize an in-memory image: seed, run SQ, map, compute metrics.
// Does not touch the filesystem; byte sizes are left at zero.
struct QuantizationOutcome {
    QuantizationReport report;
    Palette palette;
    IndexedImage indexed;
};

QuantizationOutcome quantize_image(const RawImage& img,
                                   const QuantizerConfig& config);

// Full file-to-file run: load, quantize, write the indexed PNG, fill in
// byte sizes and timing.
QuantizationReport compress_file(const std::filesystem::path& input,
                                 const std::filesystem::path& output_png,
                                 const QuantizerConfig& config);

struct BenchmarkCell {
    std::optional<double> mse;  // empty on per-image failure
    std::string error;
};

struct BenchmarkTable {
    std::vector<std::string> images;     // column labels (paths)
    std::vector<std::size_t> k_values;   // row labels
    std::vector<std::vector<BenchmarkCell>> cells;  // [k][image]
    QuantizerConfig config;              // shared hyperparameters
    std::vector<QuantizationReport> reports;
};

// Run every (image, K) cell, up to `jobs` cells concurrently. Each cell
// draws from an independent stream derived from (seed, image, K), so the
// results do not depend on scheduling.
BenchmarkTable run_benchmark(const std::vector<std::filesystem::path>& inputs,
                             const std::vector<std::size_t>& k_values,
                             const QuantizerConfig& config, std::size_t jobs);

std::string table_to_csv(const BenchmarkTable& table);
std::string table_to_markdown(const BenchmarkTable& table);
std::string table_to_json(const BenchmarkTable& table, int indent = 2);

// SQ vs Lloyd on the same image and K.
struct BaselineComparison {
    QuantizationReport sq;
    double lloyd_mse = 0.0;
    double lloyd_objective_r2 = 0.0;
    std::size_t lloyd_iterations = 0;
    double lloyd_wall_time_ms = 0.0;
    std::vector<std::string> lloyd_palette_hex;
    double speed_ratio = 0.0;  // lloyd time / sq time
};

BaselineComparison compare_baseline(const std::filesystem::path& input,
                                    const QuantizerConfig& config);

std::string comparison_to_json(const BaselineComparison& cmp, int indent = 2);

std::string seeding_name(SeedingStrategy s);
SeedingStrategy seeding_from_name(const std::string& name);

}  // namespace sqc
