#include "sqc/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

#include <json.hpp>

#include "sqc/baseline.hpp"

namespace sqc {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

json trace_to_json(const std::vector<TracePoint>& trace) {
    json arr = json::array();
    for (const TracePoint& p : trace)
        arr.push_back({{"iteration", p.iteration}, {"objective", p.objective}});
    return arr;
}

json report_json(const QuantizationReport& r) {
    return json{
        {"input_path", r.input_path},
        {"width", r.width},
        {"height", r.height},
        {"distinct_colors_before", r.distinct_colors_before},
        {"K", r.k},
        {"hyperparameters",
         {{"rho", r.rho},
          {"r", r.r},
          {"seed", r.seed},
          {"iters", r.iters},
          {"seeding", r.seeding}}},
        {"palette_hex", r.palette_hex},
        {"final_objective", r.final_objective},
        {"transport_value", r.transport_value},
        {"mse", r.mse},
        {"original_bytes", r.original_bytes},
        {"compressed_bytes", r.compressed_bytes},
        {"wall_time_ms", r.wall_time_ms},
        {"trace", trace_to_json(r.trace)},
    };
}

std::string format_mse(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string seeding_name(SeedingStrategy s) {
    return s == SeedingStrategy::Uniform ? "uniform" : "dsq";
}

SeedingStrategy seeding_from_name(const std::string& name) {
    if (name == "uniform")
        return SeedingStrategy::Uniform;
    if (name == "dsq" || name == "d-squared" || name == "dsquared")
        return SeedingStrategy::DSquared;
    throw InvalidInput("unknown seeding strategy '" + name + "'");
}

std::string report_to_json(const QuantizationReport& report, int indent) {
    return report_json(report).dump(indent);
}

QuantizationOutcome quantize_image(const RawImage& img,
                                   const QuantizerConfig& config) {
    const auto start = Clock::now();
    const PixelCloud cloud = build_cloud(img);

    QuantizerConfig cfg = config;
    if (cfg.max_iters == 0)
        cfg.max_iters = default_budget(cloud.size());

    RngStream rng(cfg.seed);
    SqResult sq = run_sq(cloud, cfg, rng);

    QuantizationOutcome out;
    out.palette = sq.palette;
    out.indexed = map_to_palette(img, sq.palette);

    QuantizationReport& rep = out.report;
    rep.width = img.width;
    rep.height = img.height;
    rep.distinct_colors_before = count_distinct_colors(img);
    rep.k = cfg.k;
    rep.rho = cfg.rho;
    rep.r = cfg.r;
    rep.seed = cfg.seed;
    rep.iters = cfg.max_iters;
    rep.seeding = seeding_name(cfg.seeding);
    for (const RawPixel& p : out.indexed.palette)
        rep.palette_hex.push_back(to_hex(p));
    rep.final_objective = objective(cloud, sq.palette, cfg.r);
    rep.transport_value = transport_value(cloud, sq.palette, cfg.r);
    rep.mse = mse(img, reconstruct(out.indexed));
    rep.trace = std::move(sq.trace);
    rep.wall_time_ms = elapsed_ms(start);
    return out;
}

QuantizationReport compress_file(const std::filesystem::path& input,
                                 const std::filesystem::path& output_png,
                                 const QuantizerConfig& config) {
    const auto start = Clock::now();
    const RawImage img = load_image(input);
    QuantizationOutcome out = quantize_image(img, config);
    out.report.input_path = input.string();
    out.report.original_bytes =
        static_cast<std::size_t>(std::filesystem::file_size(input));
    if (!output_png.empty())
        out.report.compressed_bytes =
            encode_indexed_png(out.indexed, output_png);
    out.report.wall_time_ms = elapsed_ms(start);
    return out.report;
}

BenchmarkTable run_benchmark(const std::vector<std::filesystem::path>& inputs,
                             const std::vector<std::size_t>& k_values,
                             const QuantizerConfig& config, std::size_t jobs) {
    if (inputs.empty())
        throw InvalidInput("benchmark: no input images");
    if (k_values.empty())
        throw InvalidInput("benchmark: no K values");

    BenchmarkTable table;
    for (const auto& p : inputs)
        table.images.push_back(p.string());
    table.k_values = k_values;
    table.config = config;
    table.cells.assign(k_values.size(),
                       std::vector<BenchmarkCell>(inputs.size()));
    table.reports.resize(k_values.size() * inputs.size());

    // Each cell gets a stream derived from (seed, image, K) so the result
    // is independent of how cells are scheduled across threads.
    const RngStream root(config.seed);

    struct Cell {
        std::size_t ki;
        std::size_t ii;
    };
    std::vector<Cell> todo;
    for (std::size_t ki = 0; ki < k_values.size(); ++ki)
        for (std::size_t ii = 0; ii < inputs.size(); ++ii)
            todo.push_back({ki, ii});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= todo.size())
                return;
            const auto [ki, ii] = todo[t];
            QuantizerConfig cfg = config;
            cfg.k = k_values[ki];
            cfg.seed = root.substream((std::uint64_t(ii) << 32) | k_values[ki])
                           .seed();
            BenchmarkCell& cell = table.cells[ki][ii];
            try {
                QuantizationReport rep =
                    compress_file(inputs[ii], {}, cfg);
                rep.input_path = inputs[ii].string();
                cell.mse = rep.mse;
                table.reports[ki * inputs.size() + ii] = std::move(rep);
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    };

    const std::size_t n_threads =
        std::max<std::size_t>(1, std::min(jobs, todo.size()));
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < n_threads; ++i)
        threads.emplace_back(worker);
    for (auto& th : threads)
        th.join();
    return table;
}

std::string table_to_csv(const BenchmarkTable& table) {
    std::string out = "K";
    for (const auto& img : table.images)
        out += "," + csv_escape(img);
    out += "\r\n";
    for (std::size_t ki = 0; ki < table.k_values.size(); ++ki) {
        out += std::to_string(table.k_values[ki]);
        for (const BenchmarkCell& cell : table.cells[ki]) {
            out += ",";
            out += cell.mse ? format_mse(*cell.mse)
                            : csv_escape("error: " + cell.error);
        }
        out += "\r\n";
    }
    return out;
}

std::string table_to_markdown(const BenchmarkTable& table) {
    std::string out = "| K |";
    for (const auto& img : table.images)
        out += " " + img + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < table.images.size(); ++i)
        out += "---|";
    out += "\n";
    for (std::size_t ki = 0; ki < table.k_values.size(); ++ki) {
        out += "| " + std::to_string(table.k_values[ki]) + " |";
        for (const BenchmarkCell& cell : table.cells[ki])
            out += " " +
                   (cell.mse ? format_mse(*cell.mse) : "error: " + cell.error) +
                   " |";
        out += "\n";
    }
    return out;
}

std::string table_to_json(const BenchmarkTable& table, int indent) {
    json rows = json::array();
    for (std::size_t ki = 0; ki < table.k_values.size(); ++ki) {
        json row = {{"K", table.k_values[ki]}, {"cells", json::array()}};
        for (std::size_t ii = 0; ii < table.images.size(); ++ii) {
            const BenchmarkCell& cell = table.cells[ki][ii];
            json c = {{"image", table.images[ii]}};
            if (cell.mse)
                c["mse"] = *cell.mse;
            else
                c["error"] = cell.error;
            row["cells"].push_back(c);
        }
        rows.push_back(row);
    }
    json reports = json::array();
    for (const QuantizationReport& r : table.reports)
        if (!r.palette_hex.empty())
            reports.push_back(report_json(r));
    return json{{"metadata",
                 {{"rho", table.config.rho},
                  {"r", table.config.r},
                  {"seed", table.config.seed},
                  {"seeding", seeding_name(table.config.seeding)}}},
                {"rows", rows},
                {"reports", reports}}
        .dump(indent);
}

BaselineComparison compare_baseline(const std::filesystem::path& input,
                                    const QuantizerConfig& config) {
    const RawImage img = load_image(input);
    const PixelCloud cloud = build_cloud(img);

    BaselineComparison cmp;
    {
        QuantizationOutcome out = quantize_image(img, config);
        out.report.input_path = input.string();
        out.report.original_bytes =
            static_cast<std::size_t>(std::filesystem::file_size(input));
        cmp.sq = std::move(out.report);
    }

    const auto start = Clock::now();
    RngStream rng(config.seed);
    BaselineResult lloyd = lloyd_kmeans(cloud, config.k, 100, 1e-7, rng);
    cmp.lloyd_wall_time_ms = elapsed_ms(start);
    cmp.lloyd_objective_r2 = lloyd.objective_r2;
    cmp.lloyd_iterations = lloyd.iterations_used;
    const IndexedImage mapped = map_to_palette(img, lloyd.palette);
    cmp.lloyd_mse = mse(img, reconstruct(mapped));
    for (const RawPixel& p : mapped.palette)
        cmp.lloyd_palette_hex.push_back(to_hex(p));
    cmp.speed_ratio = cmp.sq.wall_time_ms > 0.0
                          ? cmp.lloyd_wall_time_ms / cmp.sq.wall_time_ms
                          : 0.0;
    return cmp;
}

std::string comparison_to_json(const BaselineComparison& cmp, int indent) {
    return json{{"sq", report_json(cmp.sq)},
                {"lloyd",
                 {{"mse", cmp.lloyd_mse},
                  {"objective_r2", cmp.lloyd_objective_r2},
                  {"iterations", cmp.lloyd_iterations},
                  {"wall_time_ms", cmp.lloyd_wall_time_ms},
                  {"palette_hex", cmp.lloyd_palette_hex}}},
                {"speed_ratio", cmp.speed_ratio}}
        .dump(indent);
}

}  // namespace sqc
