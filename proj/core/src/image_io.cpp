#include "tgvr/image_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <vector>

#include "tgvr/grid_ops.hpp"

namespace tgvr {
namespace {

constexpr char kMagic[] = "TGVR1\n";
constexpr std::size_t kMagicLen = 6;
constexpr std::int64_t kMaxDim = 1 << 20;
constexpr std::int64_t kMaxPixels = std::int64_t{1} << 26;

void put_le64(std::uint64_t bits, unsigned char* out) {
    for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(bits >> (8 * i));
}

std::uint64_t get_le64(const unsigned char* in) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in[i]) << (8 * i);
    return bits;
}

} // namespace

void write_image(const std::string& path, const ImageGrid& grid) {
    if (grid.empty()) throw std::invalid_argument("write_image: empty grid");
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("write_image: cannot open '" + path + "'");
    os.write(kMagic, kMagicLen);
    os << grid.width() << " " << grid.height() << "\n";
    std::vector<unsigned char> buf(grid.size() * 8);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        put_le64(std::bit_cast<std::uint64_t>(grid[i]), buf.data() + 8 * i);
    }
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!os) throw IoError("write_image: write failure on '" + path + "'");
}

ImageGrid read_image(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("read_image: cannot open '" + path + "'");

    char magic[kMagicLen];
    if (!is.read(magic, kMagicLen) || !std::equal(magic, magic + kMagicLen, kMagic)) {
        throw MalformedHeaderError("read_image: bad magic in '" + path + "'");
    }

    std::int64_t width = 0, height = 0;
    if (!(is >> width >> height)) {
        throw MalformedHeaderError("read_image: unreadable dimensions in '" + path + "'");
    }
    if (is.get() != '\n') {
        throw MalformedHeaderError("read_image: header not newline-terminated in '" + path + "'");
    }
    if (width < 2 || height < 2 || width > kMaxDim || height > kMaxDim ||
        width * height > kMaxPixels) {
        throw DimensionOverflowError("read_image: implausible dimensions " +
                                     std::to_string(width) + "x" + std::to_string(height));
    }

    const std::size_t n = static_cast<std::size_t>(width * height);
    std::vector<unsigned char> buf(n * 8);
    is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(is.gcount()) != buf.size()) {
        throw TruncatedPayloadError("read_image: truncated payload in '" + path + "' (" +
                                    std::to_string(is.gcount()) + " of " +
                                    std::to_string(buf.size()) + " bytes)");
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = std::bit_cast<double>(get_le64(buf.data() + 8 * i));
        if (!std::isfinite(values[i])) {
            throw MalformedPayloadError("read_image: non-finite sample in '" + path + "'");
        }
    }
    return ImageGrid::from_values(static_cast<int>(width), static_cast<int>(height),
                                  std::move(values));
}

void write_pgm16(const std::string& path, const ImageGrid& grid) {
    if (grid.empty()) throw std::invalid_argument("write_pgm16: empty grid");
    const double lo = min_value(grid);
    const double hi = max_value(grid);
    const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("write_pgm16: cannot open '" + path + "'");
    os << "P5\n" << grid.width() << " " << grid.height() << "\n65535\n";
    std::vector<unsigned char> buf(grid.size() * 2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto q = static_cast<std::uint16_t>(std::lround((grid[i] - lo) * scale));
        buf[2 * i] = static_cast<unsigned char>(q >> 8);  // PGM samples are big-endian
        buf[2 * i + 1] = static_cast<unsigned char>(q & 0xff);
    }
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!os) throw IoError("write_pgm16: write failure on '" + path + "'");

    std::ofstream meta(path + ".meta", std::ios::trunc);
    if (!meta) throw IoError("write_pgm16: cannot open sidecar for '" + path + "'");
    char line[128];
    std::snprintf(line, sizeof line, "min=%.17g\nmax=%.17g\nwidth=%d\nheight=%d\n", lo, hi,
                  grid.width(), grid.height());
    meta << line;
}

} // namespace tgvr
