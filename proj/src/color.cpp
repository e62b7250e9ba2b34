#include "sqc/color.hpp"

#include <algorithm>
#include <limits>

namespace sqc {

RawPixel denormalize(const ColorPoint& p) {
    auto channel = [](double c) -> std::uint8_t {
        const double scaled = std::floor(c * 255.0 + 0.5);
        return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
    };
    return {channel(p.c0), channel(p.c1), channel(p.c2)};
}

ColorPoint project_unit_cube(double c0, double c1, double c2) {
    if (!std::isfinite(c0) || !std::isfinite(c1) || !std::isfinite(c2))
        throw InvalidInput("project_unit_cube: non-finite component");
    return {std::clamp(c0, 0.0, 1.0), std::clamp(c1, 0.0, 1.0),
            std::clamp(c2, 0.0, 1.0)};
}

ColorPoint project_unit_cube(const ColorPoint& p) {
    return project_unit_cube(p.c0, p.c1, p.c2);
}

std::size_t nearest_index(const ColorPoint& x, const Palette& palette) {
    if (palette.colors.empty())
        throw InvalidInput("nearest_index: empty palette");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < palette.colors.size(); ++k) {
        const double d = distance_sq(x, palette.colors[k]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

std::string to_hex(const RawPixel& p) {
    static const char* digits = "0123456789abcdef";
    std::string s = "#......";
    s[1] = digits[p.r >> 4];
    s[2] = digits[p.r & 0xf];
    s[3] = digits[p.g >> 4];
    s[4] = digits[p.g & 0xf];
    s[5] = digits[p.b >> 4];
    s[6] = digits[p.b & 0xf];
    return s;
}

}  // namespace sqc
