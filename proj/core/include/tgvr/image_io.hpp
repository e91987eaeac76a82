#pragma once

#include <string>

#include "tgvr/errors.hpp"
#include "tgvr/image_grid.hpp"

namespace tgvr {

// Native image format, lossless and trivially parseable:
//   magic "TGVR1\n", ASCII "width height\n", then row-major IEEE-754
//   binary64 samples, little-endian.

/// Write a grid in the native format.
void write_image(const std::string& path, const ImageGrid& grid);

/// Read a native-format grid. Throws MalformedHeaderError,
/// DimensionOverflowError, TruncatedPayloadError, MalformedPayloadError or
/// IoError depending on what is wrong with the file.
ImageGrid read_image(const std::string& path);

/// 16-bit binary PGM export, linearly quantized over [min, max]. The exact
/// min/max are recorded in a sidecar text header at path + ".meta" so the
/// scaling stays recoverable.
void write_pgm16(const std::string& path, const ImageGrid& grid);

} // namespace tgvr
