#ifndef ANYONPROP_VERSION_HPP
#define ANYONPROP_VERSION_HPP

namespace anyonprop {

inline constexpr const char* kVersion = "1.0.0";

} // namespace anyonprop

#endif
