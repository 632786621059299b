#pragma once

#include <stdexcept>
#include <string>

namespace khmix {

// All recoverable failures (parse errors, invalid moves, precondition
// violations on public operations) throw Error with a human-readable message.
// Internal consistency failures use assertions instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

// Stable integer id for arcs, crossings, components and faces.
using Id = int;
constexpr Id kNone = -1;

}  // namespace khmix
