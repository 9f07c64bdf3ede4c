#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace cooperkit {

// Carrier of the three-element algebra. Integer values give the
// enumeration order used everywhere (0 < 1/2 < 1).
enum class TruthValue : std::uint8_t { Zero = 0, Half = 1, One = 2 };

inline constexpr std::array<TruthValue, 3> kAllValues{TruthValue::Zero, TruthValue::Half,
                                                      TruthValue::One};
inline constexpr std::array<TruthValue, 2> kClassicalValues{TruthValue::Zero, TruthValue::One};

// Row/column order of the printed tables: 1/2, 1, 0.
inline constexpr std::array<TruthValue, 3> kDisplayOrder{TruthValue::Half, TruthValue::One,
                                                         TruthValue::Zero};

constexpr int index(TruthValue v) { return static_cast<int>(v); }
constexpr TruthValue valueAt(int i) { return static_cast<TruthValue>(i); }

constexpr std::string_view toString(TruthValue v) {
  switch (v) {
    case TruthValue::Zero: return "0";
    case TruthValue::Half: return "1/2";
    case TruthValue::One: return "1";
  }
  return "?";
}

constexpr std::optional<TruthValue> truthValueFromString(std::string_view s) {
  if (s == "0") return TruthValue::Zero;
  if (s == "1/2" || s == "½") return TruthValue::Half;
  if (s == "1") return TruthValue::One;
  return std::nullopt;
}

}  // namespace cooperkit
