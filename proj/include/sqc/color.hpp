#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqc {

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateSeeding : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A color in the unit RGB cube [0,1]^3.
struct ColorPoint {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    friend bool operator==(const ColorPoint&, const ColorPoint&) = default;
};

// An 8-bit RGB pixel as stored in image files.
struct RawPixel {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const RawPixel&, const RawPixel&) = default;
};

// The pixel distribution: points xi_i with sampling weights p_i
// (positive, summing to 1).
struct PixelCloud {
    std::vector<ColorPoint> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

// Ordered K-element quant set.
struct Palette {
    std::vector<ColorPoint> colors;

    std::size_t size() const { return colors.size(); }
};

inline double distance(const ColorPoint& a, const ColorPoint& b) {
    const double d0 = a.c0 - b.c0;
    const double d1 = a.c1 - b.c1;
    const double d2 = a.c2 - b.c2;
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

inline double distance_sq(const ColorPoint& a, const ColorPoint& b) {
    const double d0 = a.c0 - b.c0;
    const double d1 = a.c1 - b.c1;
    const double d2 = a.c2 - b.c2;
    return d0 * d0 + d1 * d1 + d2 * d2;
}

inline ColorPoint normalize(const RawPixel& raw) {
    return {raw.r / 255.0, raw.g / 255.0, raw.b / 255.0};
}

// Round-half-up per channel, clamped to [0,255]. Inverse of normalize()
// on exact 8-bit values.
RawPixel denormalize(const ColorPoint& p);

// Clamp each component into [0,1]. Throws InvalidInput on non-finite input.
ColorPoint project_unit_cube(double c0, double c1, double c2);
ColorPoint project_unit_cube(const ColorPoint& p);

// Index of the nearest palette entry; ties broken by lowest index.
std::size_t nearest_index(const ColorPoint& x, const Palette& palette);

// Neumaier compensated summation, used wherever we accumulate over all
// pixels so objective values are stable across platforms.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

std::string to_hex(const RawPixel& p);

}  // namespace sqc
