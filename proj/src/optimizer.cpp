#include "sqc/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace sqc {

void QuantizerConfig::validate() const {
    if (k < 1)
        throw InvalidInput("config: K must be >= 1");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw InvalidInput("config: rho must be positive");
    if (!(r >= 2.0) || !std::isfinite(r))
        throw InvalidInput("config: r must be >= 2");
}

std::size_t default_budget(std::size_t cloud_size) {
    const std::size_t cap = 5'000'000;
    const std::size_t passes = 50 * cloud_size;
    return std::max<std::size_t>(1, std::min(passes, cap));
}

double objective(const PixelCloud& cloud, const Palette& palette, double r) {
    if (palette.colors.empty())
        throw InvalidInput("objective: empty palette");
    if (!(r >= 1.0))
        throw InvalidInput("objective: r must be >= 1");
    CompensatedSum sum;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const std::size_t k = nearest_index(cloud.points[i], palette);
        const double d = distance(cloud.points[i], palette.colors[k]);
        sum.add(cloud.weights[i] * std::pow(d, r));
    }
    return sum.value();
}

SampleGradient sample_gradient(const ColorPoint& xi, const Palette& palette,
                               double r) {
    const std::size_t k = nearest_index(xi, palette);
    const ColorPoint& y = palette.colors[k];
    const double d = distance(xi, y);
    if (d == 0.0)
        return {k, {0.0, 0.0, 0.0}};
    const double scale = r * std::pow(d, r - 2.0);
    return {k, {scale * (y.c0 - xi.c0), scale * (y.c1 - xi.c1),
                scale * (y.c2 - xi.c2)}};
}

Palette sq_step(const Palette& palette, const ColorPoint& xi, double rho,
                double r) {
    const SampleGradient sg = sample_gradient(xi, palette, r);
    Palette next = palette;
    ColorPoint& y = next.colors[sg.nearest];
    y = project_unit_cube(y.c0 - rho * sg.g[0], y.c1 - rho * sg.g[1],
                          y.c2 - rho * sg.g[2]);
    return next;
}

SqResult run_sq(const PixelCloud& cloud, const QuantizerConfig& config,
                RngStream& rng) {
    config.validate();
    const std::size_t iters =
        config.max_iters > 0 ? config.max_iters : default_budget(cloud.size());

    SqResult result;
    result.palette = seed(cloud, config.k, config.seeding, rng);
    result.trace.push_back({0, objective(cloud, result.palette, config.r)});

    for (std::size_t t = 1; t <= iters; ++t) {
        const ColorPoint& xi = cloud.points[rng.next_index(cloud.size())];
        const SampleGradient sg = sample_gradient(xi, result.palette, config.r);
        ColorPoint& y = result.palette.colors[sg.nearest];
        y = project_unit_cube(y.c0 - config.rho * sg.g[0],
                              y.c1 - config.rho * sg.g[1],
                              y.c2 - config.rho * sg.g[2]);
        const bool cadence =
            config.trace_every > 0 && t % config.trace_every == 0;
        if (cadence || t == iters)
            result.trace.push_back({t, objective(cloud, result.palette,
                                                 config.r)});
    }
    return result;
}

}  // namespace sqc
