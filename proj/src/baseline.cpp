#include "sqc/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqc/optimizer.hpp"
#include "sqc/seeding.hpp"

namespace sqc {

BaselineResult lloyd_kmeans(const PixelCloud& cloud, std::size_t k,
                            std::size_t max_iters, double tol, RngStream& rng) {
    if (tol < 0.0)
        throw InvalidInput("lloyd_kmeans: tol must be >= 0");
    Palette centers = seed_dsquared(cloud, k, rng);

    std::vector<std::size_t> assign(cloud.size());
    std::size_t iters_used = 0;

    for (std::size_t it = 0; it < max_iters; ++it) {
        iters_used = it + 1;
        for (std::size_t i = 0; i < cloud.size(); ++i)
            assign[i] = nearest_index(cloud.points[i], centers);

        Palette next = centers;
        std::vector<CompensatedSum> sums(3 * k);
        std::vector<double> mass(k, 0.0);
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const double w = cloud.weights[i];
            const std::size_t a = assign[i];
            sums[3 * a + 0].add(w * cloud.points[i].c0);
            sums[3 * a + 1].add(w * cloud.points[i].c1);
            sums[3 * a + 2].add(w * cloud.points[i].c2);
            mass[a] += w;
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (mass[c] > 0.0) {
                next.colors[c] = {sums[3 * c + 0].value() / mass[c],
                                  sums[3 * c + 1].value() / mass[c],
                                  sums[3 * c + 2].value() / mass[c]};
            } else {
                // Re-seed an empty cluster from the farthest point.
                double worst = -1.0;
                std::size_t worst_i = 0;
                for (std::size_t i = 0; i < cloud.size(); ++i) {
                    const double d =
                        distance_sq(cloud.points[i], centers.colors[assign[i]]);
                    if (d > worst) {
                        worst = d;
                        worst_i = i;
                    }
                }
                next.colors[c] = cloud.points[worst_i];
            }
        }

        double max_move = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            max_move = std::max(max_move,
                                std::abs(next.colors[c].c0 - centers.colors[c].c0));
            max_move = std::max(max_move,
                                std::abs(next.colors[c].c1 - centers.colors[c].c1));
            max_move = std::max(max_move,
                                std::abs(next.colors[c].c2 - centers.colors[c].c2));
        }
        centers = std::move(next);
        if (max_move < tol)
            break;
    }

    return {centers, objective(cloud, centers, 2.0), iters_used};
}

namespace {

constexpr std::size_t kMaxPoints = 12;
constexpr std::size_t kMaxGroups = 3;

struct GroupSolution {
    ColorPoint center;
    double cost = 0.0;
};

double group_cost(const PixelCloud& cloud, std::uint32_t mask,
                  const ColorPoint& c, double r) {
    double cost = 0.0;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u)
            cost += cloud.weights[i] * std::pow(distance(cloud.points[i], c), r);
    return cost;
}

ColorPoint weighted_centroid(const PixelCloud& cloud, std::uint32_t mask) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, w = 0.0;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u) {
            s0 += cloud.weights[i] * cloud.points[i].c0;
            s1 += cloud.weights[i] * cloud.points[i].c1;
            s2 += cloud.weights[i] * cloud.points[i].c2;
            w += cloud.weights[i];
        }
    return {s0 / w, s1 / w, s2 / w};
}

// Optimal single center of a group. Closed form for r=2; otherwise a
// coarse grid over the group's bounding box followed by per-coordinate
// ternary refinement (the cost is convex in the center).
GroupSolution solve_group(const PixelCloud& cloud, std::uint32_t mask,
                          double r) {
    if (r == 2.0) {
        const ColorPoint c = weighted_centroid(cloud, mask);
        return {c, group_cost(cloud, mask, c, r)};
    }

    double lo[3] = {1.0, 1.0, 1.0}, hi[3] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (mask & (1u << i)) {
            const double v[3] = {cloud.points[i].c0, cloud.points[i].c1,
                                 cloud.points[i].c2};
            for (int j = 0; j < 3; ++j) {
                lo[j] = std::min(lo[j], v[j]);
                hi[j] = std::max(hi[j], v[j]);
            }
        }

    ColorPoint best = weighted_centroid(cloud, mask);
    double best_cost = group_cost(cloud, mask, best, r);
    const int grid = 8;
    for (int a = 0; a <= grid; ++a)
        for (int b = 0; b <= grid; ++b)
            for (int c = 0; c <= grid; ++c) {
                const ColorPoint p = {
                    lo[0] + (hi[0] - lo[0]) * a / grid,
                    lo[1] + (hi[1] - lo[1]) * b / grid,
                    lo[2] + (hi[2] - lo[2]) * c / grid};
                const double cost = group_cost(cloud, mask, p, r);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = p;
                }
            }

    // Coordinate descent, each axis by ternary search.
    for (int cycle = 0; cycle < 40; ++cycle) {
        double move = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
            double a = lo[axis], b = hi[axis];
            auto eval = [&](double x) {
                ColorPoint p = best;
                (axis == 0 ? p.c0 : axis == 1 ? p.c1 : p.c2) = x;
                return group_cost(cloud, mask, p, r);
            };
            while (b - a > 1e-7) {
                const double m1 = a + (b - a) / 3.0;
                const double m2 = b - (b - a) / 3.0;
                if (eval(m1) < eval(m2))
                    b = m2;
                else
                    a = m1;
            }
            const double x = 0.5 * (a + b);
            double& coord = (axis == 0 ? best.c0 : axis == 1 ? best.c1
                                                             : best.c2);
            move = std::max(move, std::abs(coord - x));
            coord = x;
        }
        if (move < 1e-6)
            break;
    }
    return {best, group_cost(cloud, mask, best, r)};
}

}  // namespace

Palette brute_force_palette(const PixelCloud& cloud, std::size_t k, double r) {
    const std::size_t n = cloud.size();
    if (n == 0 || n > kMaxPoints || k < 1 || k > kMaxGroups)
        throw InvalidInput("brute_force_palette: instance too large");

    // Optimal center/cost per point subset, computed once and reused
    // across all enumerated partitions.
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<GroupSolution> subset(full + 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask)
        subset[mask] = solve_group(cloud, mask, r);

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> best_masks;

    // Enumerate assignments in restricted-growth form (point 0 always in
    // group 0, a new group only after all lower groups are used).
    std::vector<std::uint32_t> masks(k, 0);
    auto recurse = [&](auto&& self, std::size_t point,
                       std::size_t used) -> void {
        if (point == n) {
            double cost = 0.0;
            for (std::size_t g = 0; g < used; ++g)
                cost += subset[masks[g]].cost;
            if (cost < best_cost) {
                best_cost = cost;
                best_masks.assign(masks.begin(), masks.begin() + used);
            }
            return;
        }
        const std::size_t limit = std::min(used + 1, k);
        for (std::size_t g = 0; g < limit; ++g) {
            masks[g] |= (1u << point);
            self(self, point + 1, std::max(used, g + 1));
            masks[g] &= ~(1u << point);
        }
    };
    recurse(recurse, 0, 0);

    Palette palette;
    for (std::uint32_t mask : best_masks)
        palette.colors.push_back(subset[mask].center);
    return palette;
}

}  // namespace sqc
