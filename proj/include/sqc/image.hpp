#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sqc/color.hpp"

namespace sqc {

struct RawImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<RawPixel> pixels;  // row-major, width*height entries

    std::size_t pixel_count() const { return width * height; }
};

struct IndexedImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<RawPixel> palette;
    std::vector<std::uint16_t> indices;  // row-major
};

struct CompressionMetrics {
    double mse = 0.0;
    double transport_value = 0.0;
    std::size_t original_bytes = 0;
    std::size_t compressed_bytes = 0;
    std::size_t distinct_colors_before = 0;
    std::size_t palette_size_after = 0;
};

// Decode a JPEG or PNG file to 8-bit RGB. Alpha is composited over
// white, grayscale expanded to RGB. Throws IoError with path and reason.
RawImage load_image(const std::filesystem::path& path);

// One normalized point per pixel in raster order, weight 1/I each.
PixelCloud build_cloud(const RawImage& img);

// Map every pixel to its nearest palette entry.
IndexedImage map_to_palette(const RawImage& img, const Palette& palette);

// Expand an indexed image back to a flat RGB raster.
RawImage reconstruct(const IndexedImage& img);

// Write a palette-based PNG (bit depth chosen from the palette size,
// fixed encoder settings so identical inputs give identical bytes).
// Returns the file size in bytes. Palette must have <= 256 entries.
std::size_t encode_indexed_png(const IndexedImage& img,
                               const std::filesystem::path& path);

// Read back a palette-based PNG written by encode_indexed_png.
IndexedImage decode_indexed_png(const std::filesystem::path& path);

// Mean squared per-channel error on the normalized [0,1] scale.
double mse(const RawImage& a, const RawImage& b);

// Unweighted sum over pixels of the r-th power nearest-entry distance.
double transport_value(const PixelCloud& cloud, const Palette& palette,
                       double r);

std::size_t count_distinct_colors(const RawImage& img);

}  // namespace sqc
