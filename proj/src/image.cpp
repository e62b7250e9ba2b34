#include "sqc/image.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <unordered_set>

#include <jpeglib.h>
#include <png.h>

namespace sqc {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f)
            std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f)
        throw IoError("cannot open '" + path.string() + "': " +
                      std::strerror(errno));
    return f;
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

RawImage load_jpeg(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");

    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError("cannot decode '" + path.string() + "': " + err.message);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f.get());
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    RawImage img;
    img.width = cinfo.output_width;
    img.height = cinfo.output_height;
    img.pixels.resize(img.pixel_count());

    std::vector<JSAMPLE> row(img.width * 3);
    JSAMPROW rowp = row.data();
    for (std::size_t y = 0; y < img.height; ++y) {
        jpeg_read_scanlines(&cinfo, &rowp, 1);
        for (std::size_t x = 0; x < img.width; ++x)
            img.pixels[y * img.width + x] = {row[3 * x], row[3 * x + 1],
                                             row[3 * x + 2]};
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

RawImage load_png(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;

    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw IoError("cannot decode '" + path.string() + "': " +
                      image.message);

    image.format = PNG_FORMAT_RGBA;
    RawImage img;
    img.width = image.width;
    img.height = image.height;
    img.pixels.resize(img.pixel_count());

    std::vector<std::uint8_t> buf(img.pixel_count() * 4);
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw IoError("cannot decode '" + path.string() + "': " + msg);
    }
    // Composite any alpha over white: c = round((a*fg + (255-a)*255) / 255).
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const unsigned a = buf[4 * i + 3];
        auto blend = [a](unsigned fg) -> std::uint8_t {
            return static_cast<std::uint8_t>(
                (a * fg + (255u - a) * 255u + 127u) / 255u);
        };
        img.pixels[i] = {blend(buf[4 * i]), blend(buf[4 * i + 1]),
                         blend(buf[4 * i + 2])};
    }
    return img;
}

int palette_bit_depth(std::size_t palette_size) {
    if (palette_size <= 2)
        return 1;
    if (palette_size <= 4)
        return 2;
    if (palette_size <= 16)
        return 4;
    return 8;
}

}  // namespace

RawImage load_image(const std::filesystem::path& path) {
    unsigned char magic[2] = {0, 0};
    {
        FilePtr f = open_file(path, "rb");
        if (std::fread(magic, 1, 2, f.get()) != 2)
            throw IoError("cannot read '" + path.string() + "': truncated file");
    }
    if (magic[0] == 0x89 && magic[1] == 'P')
        return load_png(path);
    if (magic[0] == 0xff && magic[1] == 0xd8)
        return load_jpeg(path);
    throw IoError("unsupported format for '" + path.string() +
                  "' (expected PNG or JPEG)");
}

PixelCloud build_cloud(const RawImage& img) {
    if (img.pixel_count() == 0)
        throw InvalidInput("build_cloud: empty image");
    PixelCloud cloud;
    cloud.points.reserve(img.pixel_count());
    for (const RawPixel& p : img.pixels)
        cloud.points.push_back(normalize(p));
    cloud.weights.assign(img.pixel_count(),
                         1.0 / static_cast<double>(img.pixel_count()));
    return cloud;
}

IndexedImage map_to_palette(const RawImage& img, const Palette& palette) {
    if (palette.colors.empty())
        throw InvalidInput("map_to_palette: empty palette");
    IndexedImage out;
    out.width = img.width;
    out.height = img.height;
    out.palette.reserve(palette.size());
    for (const ColorPoint& c : palette.colors)
        out.palette.push_back(denormalize(c));
    out.indices.resize(img.pixel_count());
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        out.indices[i] = static_cast<std::uint16_t>(
            nearest_index(normalize(img.pixels[i]), palette));
    return out;
}

RawImage reconstruct(const IndexedImage& img) {
    RawImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.reserve(img.indices.size());
    for (std::uint16_t idx : img.indices)
        out.pixels.push_back(img.palette.at(idx));
    return out;
}

std::size_t encode_indexed_png(const IndexedImage& img,
                               const std::filesystem::path& path) {
    if (img.palette.empty() || img.palette.size() > 256)
        throw InvalidInput("encode_indexed_png: palette must have 1..256 entries");
    for (std::uint16_t idx : img.indices)
        if (idx >= img.palette.size())
            throw InvalidInput("encode_indexed_png: index out of range");

    FilePtr f = open_file(path, "wb");

    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("cannot write '" + path.string() + "'");
    }

    png_init_io(png, f.get());
    // Fixed settings; output bytes depend only on the input raster.
    png_set_compression_level(png, 9);
    png_set_filter(png, 0, PNG_FILTER_NONE);

    const int depth = palette_bit_depth(img.palette.size());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), depth,
                 PNG_COLOR_TYPE_PALETTE, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);

    std::vector<png_color> plte(img.palette.size());
    for (std::size_t i = 0; i < img.palette.size(); ++i)
        plte[i] = {img.palette[i].r, img.palette[i].g, img.palette[i].b};
    png_set_PLTE(png, info, plte.data(), static_cast<int>(plte.size()));

    png_write_info(png, info);
    png_set_packing(png);

    std::vector<png_byte> row(img.width);
    for (std::size_t y = 0; y < img.height; ++y) {
        for (std::size_t x = 0; x < img.width; ++x)
            row[x] = static_cast<png_byte>(img.indices[y * img.width + x]);
        png_write_row(png, row.data());
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    f.reset();

    return static_cast<std::size_t>(std::filesystem::file_size(path));
}

IndexedImage decode_indexed_png(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");

    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("cannot read '" + path.string() + "'");
    }

    png_init_io(png, f.get());
    png_read_info(png, info);
    if (png_get_color_type(png, info) != PNG_COLOR_TYPE_PALETTE) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("'" + path.string() + "' is not an indexed PNG");
    }
    png_set_packing(png);
    png_read_update_info(png, info);

    IndexedImage img;
    img.width = png_get_image_width(png, info);
    img.height = png_get_image_height(png, info);

    png_colorp plte = nullptr;
    int n_plte = 0;
    png_get_PLTE(png, info, &plte, &n_plte);
    for (int i = 0; i < n_plte; ++i)
        img.palette.push_back({plte[i].red, plte[i].green, plte[i].blue});

    std::vector<png_byte> row(img.width);
    img.indices.reserve(img.width * img.height);
    for (std::size_t y = 0; y < img.height; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (std::size_t x = 0; x < img.width; ++x)
            img.indices.push_back(row[x]);
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

double mse(const RawImage& a, const RawImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw InvalidInput("mse: dimension mismatch");
    CompensatedSum sum;
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        const double dr = (a.pixels[i].r - b.pixels[i].r) / 255.0;
        const double dg = (a.pixels[i].g - b.pixels[i].g) / 255.0;
        const double db = (a.pixels[i].b - b.pixels[i].b) / 255.0;
        sum.add(dr * dr + dg * dg + db * db);
    }
    return sum.value() / (3.0 * static_cast<double>(a.pixel_count()));
}

double transport_value(const PixelCloud& cloud, const Palette& palette,
                       double r) {
    if (palette.colors.empty())
        throw InvalidInput("transport_value: empty palette");
    CompensatedSum sum;
    for (const ColorPoint& xi : cloud.points) {
        const std::size_t k = nearest_index(xi, palette);
        sum.add(std::pow(distance(xi, palette.colors[k]), r));
    }
    return sum.value();
}

std::size_t count_distinct_colors(const RawImage& img) {
    std::unordered_set<std::uint32_t> seen;
    seen.reserve(img.pixel_count());
    for (const RawPixel& p : img.pixels)
        seen.insert((std::uint32_t(p.r) << 16) | (std::uint32_t(p.g) << 8) |
                    p.b);
    return seen.size();
}

}  // namespace sqc
