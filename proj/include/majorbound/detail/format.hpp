// format.hpp — locale-independent number formatting (12 significant digits).
#pragma once

#include <cstdio>
#include <string>

namespace majorbound::detail {

inline std::string g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace majorbound::detail
