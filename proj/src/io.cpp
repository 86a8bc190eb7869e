#include "kerr/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace kerr {

static_assert(std::endian::native == std::endian::little,
              "WGR1 writer assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'W', 'G', 'R', '1'};

void write_header(std::ofstream& out, const Grid2D& g, std::uint8_t kind) {
    out.write(kMagic, 4);
    const std::uint32_t nq = static_cast<std::uint32_t>(g.n_q);
    const std::uint32_t np = static_cast<std::uint32_t>(g.n_p);
    out.write(reinterpret_cast<const char*>(&nq), 4);
    out.write(reinterpret_cast<const char*>(&np), 4);
    const double extents[4] = {g.q_min, g.q_max, g.p_min, g.p_max};
    out.write(reinterpret_cast<const char*>(extents), sizeof(extents));
    out.write(reinterpret_cast<const char*>(&kind), 1);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field& f) {
    auto out = open_out(path);
    write_header(out, f.grid, 0);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_field(const std::filesystem::path& path, const ComplexField& f) {
    auto out = open_out(path);
    write_header(out, f.grid, 1);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * 2 * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

AnyField read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a WGR1 file: " + path.string());
    std::uint32_t nq = 0, np = 0;
    in.read(reinterpret_cast<char*>(&nq), 4);
    in.read(reinterpret_cast<char*>(&np), 4);
    double extents[4];
    in.read(reinterpret_cast<char*>(extents), sizeof(extents));
    std::uint8_t kind = 0;
    in.read(reinterpret_cast<char*>(&kind), 1);
    if (!in || (kind != 0 && kind != 1))
        throw std::runtime_error("corrupt WGR1 header: " + path.string());
    const Grid2D grid(extents[0], extents[1], extents[2], extents[3],
                      static_cast<int>(nq), static_cast<int>(np));
    if (kind == 0) {
        Field f(grid);
        in.read(reinterpret_cast<char*>(f.values.data()),
                static_cast<std::streamsize>(f.values.size() * sizeof(double)));
        if (!in) throw std::runtime_error("truncated WGR1 payload: " + path.string());
        return f;
    }
    ComplexField f(grid);
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * 2 * sizeof(double)));
    if (!in) throw std::runtime_error("truncated WGR1 payload: " + path.string());
    return f;
}

Field read_real_field(const std::filesystem::path& path) {
    AnyField any = read_field(path);
    if (auto* f = std::get_if<Field>(&any)) return std::move(*f);
    throw std::runtime_error("expected a real-valued WGR1 file: " + path.string());
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size())
        throw std::invalid_argument("write_csv: header/column count mismatch");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    auto out = std::ofstream(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << "\n";
    char buf[64];
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", columns[c][r]);
            out << (c ? "," : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace kerr
