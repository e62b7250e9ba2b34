#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqc/pipeline.hpp"

namespace py = pybind11;

namespace {

// Accepts (H, W, 3) or (N, 3) uint8 arrays.
sqc::RawImage image_from_array(const py::array_t<std::uint8_t>& arr) {
    const auto buf = arr.request();
    sqc::RawImage img;
    if (buf.ndim == 3 && buf.shape[2] == 3) {
        img.height = static_cast<std::size_t>(buf.shape[0]);
        img.width = static_cast<std::size_t>(buf.shape[1]);
    } else if (buf.ndim == 2 && buf.shape[1] == 3) {
        img.height = 1;
        img.width = static_cast<std::size_t>(buf.shape[0]);
    } else {
        throw sqc::InvalidInput("expected a (H, W, 3) or (N, 3) uint8 array");
    }
    const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>
        c(arr);
    const std::uint8_t* p = c.data();
    img.pixels.reserve(img.pixel_count());
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        img.pixels.push_back({p[3 * i], p[3 * i + 1], p[3 * i + 2]});
    return img;
}

sqc::QuantizerConfig make_config(std::size_t k, double rho, double r,
                                 std::size_t iters, std::uint64_t seed,
                                 const std::string& seeding,
                                 std::size_t trace_every) {
    sqc::QuantizerConfig cfg;
    cfg.k = k;
    cfg.rho = rho;
    cfg.r = r;
    cfg.max_iters = iters;
    cfg.seed = seed;
    cfg.seeding = sqc::seeding_from_name(seeding);
    cfg.trace_every = trace_every;
    return cfg;
}

py::dict outcome_to_dict(const sqc::QuantizationOutcome& out) {
    const std::size_t k = out.indexed.palette.size();
    py::array_t<std::uint8_t> palette({k, std::size_t(3)});
    auto pal = palette.mutable_unchecked<2>();
    for (std::size_t i = 0; i < k; ++i) {
        pal(i, 0) = out.indexed.palette[i].r;
        pal(i, 1) = out.indexed.palette[i].g;
        pal(i, 2) = out.indexed.palette[i].b;
    }
    py::array_t<std::uint32_t> indices(
        {out.indexed.height, out.indexed.width});
    auto idx = indices.mutable_unchecked<2>();
    for (std::size_t y = 0; y < out.indexed.height; ++y)
        for (std::size_t x = 0; x < out.indexed.width; ++x)
            idx(y, x) = out.indexed.indices[y * out.indexed.width + x];

    py::list trace;
    for (const sqc::TracePoint& p : out.report.trace)
        trace.append(py::make_tuple(p.iteration, p.objective));

    py::dict d;
    d["palette"] = palette;
    d["indices"] = indices;
    d["palette_hex"] = out.report.palette_hex;
    d["mse"] = out.report.mse;
    d["objective"] = out.report.final_objective;
    d["transport_value"] = out.report.transport_value;
    d["distinct_colors_before"] = out.report.distinct_colors_before;
    d["iters"] = out.report.iters;
    d["trace"] = trace;
    return d;
}

}  // namespace

PYBIND11_MODULE(_sqc, m) {
    m.doc() = "Stochastic color quantization core";

    py::register_exception<sqc::InvalidInput>(m, "InvalidInput",
                                              PyExc_ValueError);
    py::register_exception<sqc::IoError>(m, "IoError", PyExc_IOError);
    py::register_exception<sqc::DegenerateSeeding>(m, "DegenerateSeeding",
                                                   PyExc_ValueError);

    m.def(
        "quantize",
        [](const py::array_t<std::uint8_t>& pixels, std::size_t k, double rho,
           double r, std::size_t iters, std::uint64_t seed,
           const std::string& seeding, std::size_t trace_every) {
            const sqc::RawImage img = image_from_array(pixels);
            sqc::QuantizationOutcome out;
            {
                py::gil_scoped_release release;
                out = sqc::quantize_image(
                    img, make_config(k, rho, r, iters, seed, seeding,
                                     trace_every));
            }
            return outcome_to_dict(out);
        },
        py::arg("pixels"), py::arg("k"), py::arg("rho") = 0.001,
        py::arg("r") = 3.0, py::arg("iters") = 0, py::arg("seed") = 42,
        py::arg("seeding") = "dsq", py::arg("trace_every") = 0,
        "Optimize a K-color palette for an RGB pixel array and map the "
        "pixels onto it.");

    m.def(
        "compress_file",
        [](const std::string& input, const std::string& output, std::size_t k,
           double rho, double r, std::size_t iters, std::uint64_t seed,
           const std::string& seeding) {
            sqc::QuantizationReport rep;
            {
                py::gil_scoped_release release;
                rep = sqc::compress_file(
                    input, output,
                    make_config(k, rho, r, iters, seed, seeding, 0));
            }
            return sqc::report_to_json(rep, -1);
        },
        py::arg("input"), py::arg("output"), py::arg("k"),
        py::arg("rho") = 0.001, py::arg("r") = 3.0, py::arg("iters") = 0,
        py::arg("seed") = 42, py::arg("seeding") = "dsq",
        "Compress an image file to an indexed PNG; returns the report as a "
        "JSON string.");

    m.def(
        "mse",
        [](const py::array_t<std::uint8_t>& a,
           const py::array_t<std::uint8_t>& b) {
            return sqc::mse(image_from_array(a), image_from_array(b));
        },
        py::arg("a"), py::arg("b"),
        "Mean squared per-channel error on the normalized [0,1] scale.");
}
