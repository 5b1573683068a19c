#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace ssclab {

enum class Truth : std::uint8_t { True, False, Unknown };

/// Three-valued outcome with the reason attached when undecided.
/// Deepening an evaluation may resolve Unknown but never flips True/False.
struct Verdict {
  Truth truth = Truth::Unknown;
  std::string reason;  // nonempty only for Unknown

  static Verdict yes() { return {Truth::True, {}}; }
  static Verdict no() { return {Truth::False, {}}; }
  static Verdict unknown(std::string why) {
    return {Truth::Unknown, std::move(why)};
  }

  bool is_true() const { return truth == Truth::True; }
  bool is_false() const { return truth == Truth::False; }
  bool decided() const { return truth != Truth::Unknown; }

  Verdict negate() const {
    if (truth == Truth::True) return no();
    if (truth == Truth::False) return yes();
    return *this;
  }

  bool operator==(const Verdict&) const = default;
};

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    default: return "unknown";
  }
}

}  // namespace ssclab
