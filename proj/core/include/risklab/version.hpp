// version.hpp -- library version string recorded in result metadata.

#ifndef RISKLAB_VERSION_HPP
#define RISKLAB_VERSION_HPP

namespace risklab {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace risklab

#endif  // RISKLAB_VERSION_HPP
