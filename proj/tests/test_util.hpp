#ifndef SUS_TESTS_TEST_UTIL_HPP
#define SUS_TESTS_TEST_UTIL_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace sus::testutil {

// Scratch space under the test working directory, wiped per call so stale
// artifacts from earlier runs cannot mask failures.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path("scratch") / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace sus::testutil

#endif  // SUS_TESTS_TEST_UTIL_HPP
