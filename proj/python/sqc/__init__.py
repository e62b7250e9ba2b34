"""Stochastic color quantization: optimal K-color palettes via
single-sample projected SGD on a transport objective."""

import json as _json

try:
    from ._sqc import (  # type: ignore
        DegenerateSeeding,
        InvalidInput,
        IoError,
        compress_file as _compress_file,
        mse,
        quantize,
    )
except ImportError:  # build-tree layout: module next to the package
    from _sqc import (  # type: ignore
        DegenerateSeeding,
        InvalidInput,
        IoError,
        compress_file as _compress_file,
        mse,
        quantize,
    )

__all__ = [
    "quantize",
    "compress_file",
    "mse",
    "InvalidInput",
    "IoError",
    "DegenerateSeeding",
]


def compress_file(input_path, output_path, k, **kwargs):
    """Compress an image file to an indexed PNG. Returns the report dict."""
    return _json.loads(_compress_file(str(input_path), str(output_path), k, **kwargs))
