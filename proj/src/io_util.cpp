#include "sus/io_util.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace sus::io {

BinaryWriter::BinaryWriter(const std::string& path)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
  if (!out_) throw std::runtime_error("cannot open for writing: " + path);
}

void BinaryWriter::write_bytes(const void* data, std::size_t size) {
  out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out_) throw std::runtime_error("write failed: " + path_);
}

void BinaryWriter::write_u8(std::uint8_t v) { write_bytes(&v, 1); }

void BinaryWriter::write_u32(std::uint32_t v) {
  unsigned char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  write_bytes(buf, 4);
}

void BinaryWriter::write_u64(std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  write_bytes(buf, 8);
}

void BinaryWriter::write_f64(double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  write_u64(bits);
}

void BinaryWriter::write_magic(const char (&magic)[9]) { write_bytes(magic, 8); }

BinaryReader::BinaryReader(const std::string& path)
    : in_(path, std::ios::binary), path_(path) {
  if (!in_) throw std::runtime_error("cannot open for reading: " + path);
}

void BinaryReader::read_bytes(void* data, std::size_t size) {
  in_.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
  if (in_.gcount() != static_cast<std::streamsize>(size)) {
    throw std::runtime_error("truncated file: " + path_);
  }
}

std::uint8_t BinaryReader::read_u8() {
  std::uint8_t v;
  read_bytes(&v, 1);
  return v;
}

std::uint32_t BinaryReader::read_u32() {
  unsigned char buf[4];
  read_bytes(buf, 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
  return v;
}

std::uint64_t BinaryReader::read_u64() {
  unsigned char buf[8];
  read_bytes(buf, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

double BinaryReader::read_f64() {
  const std::uint64_t bits = read_u64();
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

void BinaryReader::expect_magic(const char (&magic)[9], const std::string& what) {
  char buf[8];
  read_bytes(buf, 8);
  if (std::memcmp(buf, magic, 8) != 0) {
    throw std::runtime_error(path_ + " is not a " + what + " file");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::string best;
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v &&
        (best.empty() || std::strlen(buf) < best.size()))
      best = buf;
  }
  if (!best.empty()) return best;
  std::snprintf(buf, sizeof(buf), "%.17g", v);  // non-finite values land here
  return buf;
}

std::string hex_u64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex_u64(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sus::io
