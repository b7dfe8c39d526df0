#ifndef SUS_IO_UTIL_HPP
#define SUS_IO_UTIL_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace sus::io {

// Little-endian binary container IO, independent of host byte order.
class BinaryWriter {
 public:
  explicit BinaryWriter(const std::string& path);

  void write_bytes(const void* data, std::size_t size);
  void write_u8(std::uint8_t v);
  void write_u32(std::uint32_t v);
  void write_u64(std::uint64_t v);
  void write_f64(double v);
  void write_magic(const char (&magic)[9]);  // 8 chars + NUL

 private:
  std::ofstream out_;
  std::string path_;
};

class BinaryReader {
 public:
  explicit BinaryReader(const std::string& path);

  void read_bytes(void* data, std::size_t size);
  std::uint8_t read_u8();
  std::uint32_t read_u32();
  std::uint64_t read_u64();
  double read_f64();
  void expect_magic(const char (&magic)[9], const std::string& what);

 private:
  std::ifstream in_;
  std::string path_;
};

// Shortest decimal that round-trips the exact double ("%.17g").
std::string format_double(double v);

std::string hex_u64(std::uint64_t v);
std::uint64_t parse_hex_u64(const std::string& s);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace sus::io

#endif  // SUS_IO_UTIL_HPP
