#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "qnls/field.hpp"

namespace qnls::io {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Little-endian layout: u32 version, u32 n, f64 L, f64 time, n pairs of
/// f64 (re, im), u32 CRC-32 of every preceding byte.
std::vector<unsigned char> encode_checkpoint(const Field& f);
Field decode_checkpoint(const std::vector<unsigned char>& bytes);

void save_checkpoint(const std::filesystem::path& path, const Field& f);
Field load_checkpoint(const std::filesystem::path& path);

}  // namespace qnls::io
