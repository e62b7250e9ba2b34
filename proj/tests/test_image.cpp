#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <png.h>

#include "sqc/image.hpp"
#include "sqc/optimizer.hpp"
#include "sqc/rng.hpp"

using namespace sqc;
namespace fs = std::filesystem;

namespace {

fs::path data_dir() { return fs::path(SQC_TEST_DATA_DIR); }

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "sqc_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::vector<char> read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in),
            std::istreambuf_iterator<char>()};
}

// Plain 24-bit RGB PNG writer, used only for size comparisons.
void write_rgb_png(const RawImage& img, const fs::path& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    REQUIRE(f);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    REQUIRE(setjmp(png_jmpbuf(png)) == 0);
    png_init_io(png, f);
    png_set_compression_level(png, 9);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_byte> row(img.width * 3);
    for (std::size_t y = 0; y < img.height; ++y) {
        for (std::size_t x = 0; x < img.width; ++x) {
            const RawPixel& p = img.pixels[y * img.width + x];
            row[3 * x] = p.r;
            row[3 * x + 1] = p.g;
            row[3 * x + 2] = p.b;
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    std::fclose(f);
}

}  // namespace

TEST_CASE("load_image: PNG fixtures") {
    const RawImage bw = load_image(data_dir() / "bw_2x1.png");
    REQUIRE(bw.width == 2);
    REQUIRE(bw.height == 1);
    CHECK(bw.pixels[0] == RawPixel{0, 0, 0});
    CHECK(bw.pixels[1] == RawPixel{255, 255, 255});

    // grayscale expands to RGB
    const RawImage gray = load_image(data_dir() / "gray_2x1.png");
    CHECK(gray.pixels[0] == RawPixel{128, 128, 128});
    CHECK(gray.pixels[1] == RawPixel{200, 200, 200});

    // alpha composited over white
    const RawImage rgba = load_image(data_dir() / "rgba_2x2.png");
    CHECK(rgba.pixels[0] == RawPixel{255, 0, 0});
    CHECK(rgba.pixels[1] == RawPixel{255, 255, 255});  // fully transparent
    // (0,0,255,128) over white: (128*0 + 127*255 + 127)/255 = 127
    CHECK(rgba.pixels[2] == RawPixel{127, 127, 255});
    CHECK(rgba.pixels[3] == RawPixel{0, 255, 0});
}

TEST_CASE("load_image: JPEG fixture and errors") {
    const RawImage jpg = load_image(data_dir() / "gradient_32x24.jpg");
    CHECK(jpg.width == 32);
    CHECK(jpg.height == 24);

    CHECK_THROWS_AS(load_image(data_dir() / "does_not_exist.png"), IoError);
    CHECK_THROWS_AS(load_image(data_dir() / "gen_fixtures.py"), IoError);
}

TEST_CASE("build_cloud: normalized points with uniform weights") {
    RawImage img;
    img.width = 1;
    img.height = 1;
    img.pixels = {{255, 0, 0}};
    const PixelCloud one = build_cloud(img);
    REQUIRE(one.size() == 1);
    CHECK(one.points[0] == ColorPoint{1, 0, 0});
    CHECK(one.weights[0] == 1.0);

    const RawImage jpg = load_image(data_dir() / "gradient_32x24.jpg");
    const PixelCloud cloud = build_cloud(jpg);
    CompensatedSum sum;
    for (double w : cloud.weights)
        sum.add(w);
    CHECK(sum.value() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("map_to_palette: zero-loss when palette covers all colors") {
    const RawImage img = load_image(data_dir() / "colors4_16x16.png");
    REQUIRE(count_distinct_colors(img) == 4);
    Palette pal;
    for (const RawPixel& p :
         {RawPixel{10, 20, 30}, RawPixel{200, 40, 60}, RawPixel{0, 255, 0},
          RawPixel{128, 128, 128}})
        pal.colors.push_back(normalize(p));
    const IndexedImage mapped = map_to_palette(img, pal);
    const RawImage back = reconstruct(mapped);
    CHECK(back.pixels == img.pixels);
    CHECK(mse(img, back) == 0.0);
    CHECK(transport_value(build_cloud(img), pal, 3.0) == 0.0);
}

TEST_CASE("map_to_palette: gray ramp boundaries at midpoints") {
    const RawImage ramp = load_image(data_dir() / "ramp_256x1.png");
    Palette pal;
    for (int v : {0x3e, 0x70, 0xa1, 0xd7})
        pal.colors.push_back(normalize(
            {std::uint8_t(v), std::uint8_t(v), std::uint8_t(v)}));
    const IndexedImage mapped = map_to_palette(ramp, pal);

    // palette grays 62, 112, 161, 215 -> boundaries at the midpoints
    // 87, 136.5, 188. Exact midpoints are not exact ties after /255
    // normalization, so the oracle is an independent 1-D scan in the
    // same normalized coordinates.
    const int grays[4] = {0x3e, 0x70, 0xa1, 0xd7};
    for (int g = 0; g < 256; ++g) {
        std::uint16_t expect = 0;
        double best = 1e9;
        for (int k = 0; k < 4; ++k) {
            const double d = std::abs(g / 255.0 - grays[k] / 255.0);
            if (d < best) {
                best = d;
                expect = static_cast<std::uint16_t>(k);
            }
        }
        CHECK(mapped.indices[g] == expect);
    }
    // spot checks away from the midpoints
    CHECK(mapped.indices[86] == 0);
    CHECK(mapped.indices[88] == 1);
    CHECK(mapped.indices[136] == 1);
    CHECK(mapped.indices[137] == 2);
    CHECK(mapped.indices[187] == 2);
    CHECK(mapped.indices[189] == 3);
}

TEST_CASE("indexed PNG: round trip, determinism, size advantage") {
    const RawImage img = load_image(data_dir() / "colors4_16x16.png");
    Palette pal;
    for (const RawPixel& p :
         {RawPixel{10, 20, 30}, RawPixel{200, 40, 60}, RawPixel{0, 255, 0},
          RawPixel{128, 128, 128}})
        pal.colors.push_back(normalize(p));
    const IndexedImage mapped = map_to_palette(img, pal);

    const fs::path out1 = temp_file("roundtrip1.png");
    const fs::path out2 = temp_file("roundtrip2.png");
    const std::size_t n1 = encode_indexed_png(mapped, out1);
    const std::size_t n2 = encode_indexed_png(mapped, out2);
    CHECK(n1 == n2);
    CHECK(read_bytes(out1) == read_bytes(out2));

    const IndexedImage back = decode_indexed_png(out1);
    CHECK(back.width == mapped.width);
    CHECK(back.height == mapped.height);
    CHECK(back.palette == mapped.palette);
    CHECK(back.indices == mapped.indices);

    // a 4-color indexed file beats the 24-bit encoding of the same raster
    RngStream rng(17);
    RawImage big;
    big.width = 300;
    big.height = 200;
    for (std::size_t i = 0; i < big.width * big.height; ++i)
        big.pixels.push_back(
            {std::uint8_t(rng.next_index(4) * 80), 10, 200});
    Palette pal4;
    for (int v : {0, 80, 160, 240})
        pal4.colors.push_back(normalize({std::uint8_t(v), 10, 200}));
    const fs::path indexed_path = temp_file("indexed_big.png");
    const fs::path rgb_path = temp_file("rgb_big.png");
    const std::size_t indexed_size =
        encode_indexed_png(map_to_palette(big, pal4), indexed_path);
    write_rgb_png(big, rgb_path);
    CHECK(indexed_size < fs::file_size(rgb_path));
}

TEST_CASE("encode_indexed_png: input validation") {
    IndexedImage img;
    img.width = 1;
    img.height = 1;
    img.indices = {0};
    CHECK_THROWS_AS(encode_indexed_png(img, temp_file("bad.png")),
                    InvalidInput);
    img.palette = {{0, 0, 0}};
    img.indices = {3};
    CHECK_THROWS_AS(encode_indexed_png(img, temp_file("bad.png")),
                    InvalidInput);
    img.indices = {0};
    CHECK_THROWS_AS(encode_indexed_png(img, "/nonexistent-dir/x.png"),
                    IoError);
}

TEST_CASE("mse: known values and identity with objective") {
    const RawImage img = load_image(data_dir() / "bw_2x1.png");
    CHECK(mse(img, img) == 0.0);

    RawImage black, white;
    black.width = white.width = 2;
    black.height = white.height = 2;
    black.pixels.assign(4, {0, 0, 0});
    white.pixels.assign(4, {255, 255, 255});
    CHECK(mse(black, white) == 1.0);

    RawImage other;
    other.width = 1;
    other.height = 1;
    other.pixels = {{0, 0, 0}};
    CHECK_THROWS_AS(mse(black, other), InvalidInput);

    // mse(original, mapped) == objective(cloud, palette, r=2) / 3
    const RawImage ramp = load_image(data_dir() / "ramp_256x1.png");
    Palette pal;
    for (int v : {0x3e, 0x70, 0xa1, 0xd7})
        pal.colors.push_back(normalize(
            {std::uint8_t(v), std::uint8_t(v), std::uint8_t(v)}));
    const RawImage mapped = reconstruct(map_to_palette(ramp, pal));
    const double m = mse(ramp, mapped);
    const double obj = objective(build_cloud(ramp), pal, 2.0);
    CHECK(m == doctest::Approx(obj / 3.0).epsilon(1e-12));
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
}

TEST_CASE("transport_value: unweighted pixel sum") {
    PixelCloud cloud;
    cloud.points = {{0, 0, 0}, {1, 1, 1}};
    cloud.weights = {0.5, 0.5};
    const Palette pal{{{0, 0, 0}}};
    // (sqrt 3)^3, not halved
    CHECK(transport_value(cloud, pal, 3.0) ==
          doctest::Approx(5.1961524).epsilon(1e-6));
    CHECK(transport_value(cloud, Palette{{{0, 0, 0}, {1, 1, 1}}}, 3.0) == 0.0);
}

TEST_CASE("count_distinct_colors") {
    RawImage img;
    img.width = 4;
    img.height = 1;
    img.pixels.assign(4, {7, 7, 7});
    CHECK(count_distinct_colors(img) == 1);

    const RawImage ramp = load_image(data_dir() / "ramp_256x1.png");
    CHECK(count_distinct_colors(ramp) == 256);

    img.pixels = {{0, 0, 0}, {255, 255, 255}, {0, 0, 0}, {255, 255, 255}};
    CHECK(count_distinct_colors(img) == 2);
}
