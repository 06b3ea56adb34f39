#include "qnls/io/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <zlib.h>

#include "qnls/errors.hpp"

namespace qnls::io {

namespace {

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_f64(std::vector<unsigned char>& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

double get_f64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

std::uint32_t crc_of(const unsigned char* p, std::size_t len) {
  return static_cast<std::uint32_t>(::crc32(::crc32(0L, Z_NULL, 0), p, static_cast<uInt>(len)));
}

constexpr std::size_t kHeaderBytes = 4 + 4 + 8 + 8;

}  // namespace

std::vector<unsigned char> encode_checkpoint(const Field& f) {
  std::vector<unsigned char> out;
  out.reserve(kHeaderBytes + 16 * f.size() + 4);
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(f.size()));
  put_f64(out, f.grid.length());
  put_f64(out, f.time);
  for (auto z : f.values) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
  put_u32(out, crc_of(out.data(), out.size()));
  return out;
}

Field decode_checkpoint(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < kHeaderBytes + 4) throw IoError("checkpoint truncated");
  const std::uint32_t version = get_u32(bytes.data());
  if (version != kCheckpointVersion) {
    throw IoError("checkpoint format version " + std::to_string(version) + " is not supported (expected " +
                  std::to_string(kCheckpointVersion) + ")");
  }
  const std::uint32_t n = get_u32(bytes.data() + 4);
  const std::size_t expected = kHeaderBytes + 16 * static_cast<std::size_t>(n) + 4;
  if (bytes.size() != expected) {
    throw IoError("checkpoint size " + std::to_string(bytes.size()) + " does not match n=" + std::to_string(n));
  }
  const std::uint32_t stored = get_u32(bytes.data() + expected - 4);
  if (stored != crc_of(bytes.data(), expected - 4)) throw IoError("checkpoint checksum mismatch");
  const double L = get_f64(bytes.data() + 8);
  const double t = get_f64(bytes.data() + 16);
  Grid g(n, L);
  std::vector<cplx> values(n);
  const unsigned char* p = bytes.data() + kHeaderBytes;
  for (std::size_t j = 0; j < n; ++j, p += 16) values[j] = {get_f64(p), get_f64(p + 8)};
  return Field(g, std::move(values), t);
}

void save_checkpoint(const std::filesystem::path& path, const Field& f) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  const auto bytes = encode_checkpoint(f);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

Field load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_checkpoint(bytes);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace qnls::io
