#ifndef SUS_VERSION_HPP
#define SUS_VERSION_HPP

namespace sus {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace sus

#endif  // SUS_VERSION_HPP
