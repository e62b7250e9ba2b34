#pragma once

#include <array>
#include <cstdint>

#include "sqc/color.hpp"
#include "sqc/rng.hpp"
#include "sqc/seeding.hpp"

namespace sqc {

struct QuantizerConfig {
    std::size_t k = 4;
    double rho = 0.001;
    double r = 3.0;
    std::size_t max_iters = 0;  // 0 = default_budget(cloud size)
    std::uint64_t seed = 42;
    SeedingStrategy seeding = SeedingStrategy::DSquared;
    std::size_t trace_every = 0;  // 0 = trace only endpoints

    void validate() const;
};

struct TracePoint {
    std::size_t iteration = 0;
    double objective = 0.0;
};

struct SqResult {
    Palette palette;
    std::vector<TracePoint> trace;
};

// Default iteration budget: 50 passes' worth of single-sample steps,
// capped at 5e6.
std::size_t default_budget(std::size_t cloud_size);

// Weighted transport objective: sum_i p_i min_k d(xi_i, y_k)^r.
double objective(const PixelCloud& cloud, const Palette& palette, double r);

struct SampleGradient {
    std::size_t nearest;
    std::array<double, 3> g;
};

// Gradient of d(xi, y_k)^r at the nearest entry k*:
//   g = r * ||xi - y_k*||^(r-2) * (y_k* - xi),
// defined as exactly zero when xi == y_k*.
SampleGradient sample_gradient(const ColorPoint& xi, const Palette& palette,
                               double r);

// One projected SGD step: only the nearest entry moves,
//   y_k* <- project_unit_cube(y_k* - rho * g).
Palette sq_step(const Palette& palette, const ColorPoint& xi, double rho,
                double r);

// Full run: seed per config, then max_iters single-sample steps with the
// sample drawn uniformly by pixel index. Deterministic given the seed.
SqResult run_sq(const PixelCloud& cloud, const QuantizerConfig& config,
                RngStream& rng);

}  // namespace sqc
