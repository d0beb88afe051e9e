#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "cubelearn/error.hpp"

namespace cubelearn {

using Coord = std::int64_t;

/// A lattice coordinate extended with -inf and +inf, totally ordered
/// as -inf < every finite value < +inf.
class Bound {
 public:
  enum class Kind : std::uint8_t { NegInf = 0, Finite = 1, PosInf = 2 };

  constexpr Bound() = default;
  constexpr Bound(Coord v) : kind_(Kind::Finite), value_(v) {}  // NOLINT: implicit by intent

  static constexpr Bound neg_inf() { return Bound(Kind::NegInf); }
  static constexpr Bound pos_inf() { return Bound(Kind::PosInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }

  /// Finite value; throws for infinite bounds.
  Coord value() const {
    if (!is_finite()) throw Error("value() called on an infinite bound");
    return value_;
  }

  /// Shift a finite bound; infinite bounds absorb the offset.
  Bound plus(Coord delta) const {
    return is_finite() ? Bound(checked_add(value_, delta)) : *this;
  }

  constexpr std::strong_ordering operator<=>(const Bound& o) const {
    if (kind_ != o.kind_) return kind_ <=> o.kind_;
    if (kind_ != Kind::Finite) return std::strong_ordering::equal;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const Bound& o) const { return (*this <=> o) == 0; }

  friend constexpr std::strong_ordering operator<=>(const Bound& b, Coord v) { return b <=> Bound(v); }
  friend constexpr bool operator==(const Bound& b, Coord v) { return b == Bound(v); }

  std::string to_string() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      default: return std::to_string(value_);
    }
  }

 private:
  explicit constexpr Bound(Kind k) : kind_(k), value_(0) {}

  Kind kind_ = Kind::Finite;
  Coord value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Bound& b) { return os << b.to_string(); }

/// Binary size of an integer, 1 + ceil(log2(|x| + 1)); infinite bounds count 1.
std::int64_t bound_size(const Bound& b);

}  // namespace cubelearn
