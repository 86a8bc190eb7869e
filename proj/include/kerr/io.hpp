#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "kerr/phase_space.hpp"

namespace kerr {

/// Bit-exact grid file format "WGR1":
///   magic "WGR1"; u32 n_q, n_p; f64 q_min, q_max, p_min, p_max;
///   u8 value kind (0 = real, 1 = complex interleaved);
///   f64 samples, row-major, p outer descending. All little-endian.
void write_field(const std::filesystem::path& path, const Field& f);
void write_field(const std::filesystem::path& path, const ComplexField& f);

using AnyField = std::variant<Field, ComplexField>;
AnyField read_field(const std::filesystem::path& path);
Field read_real_field(const std::filesystem::path& path);

/// CSV with a header row and 17-significant-digit values.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

}  // namespace kerr
