#ifndef DIMER_VERSION_HPP
#define DIMER_VERSION_HPP

namespace dimer {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
