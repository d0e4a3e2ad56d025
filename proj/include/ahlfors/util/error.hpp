#pragma once

#include <stdexcept>
#include <string>

namespace ahlfors {

/// Library-wide error type. Thrown on contract violations (bad inputs,
/// malformed files, impossible requests); never on numeric edge cases
/// that have a defined sentinel (those return +inf / 0 as documented).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

}  // namespace ahlfors
