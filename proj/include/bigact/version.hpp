#ifndef BIGACT_VERSION_HPP
#define BIGACT_VERSION_HPP

namespace bigact {
inline constexpr const char *kVersion = "1.0.0";
}

#endif
