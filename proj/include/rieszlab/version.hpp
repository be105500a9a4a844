#ifndef RIESZLAB_VERSION_HPP
#define RIESZLAB_VERSION_HPP

namespace rieszlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rieszlab

#endif  // RIESZLAB_VERSION_HPP
