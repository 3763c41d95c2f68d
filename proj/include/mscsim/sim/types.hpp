#pragma once

#include <cmath>
#include <cstdint>

namespace mscsim {

using NodeId = std::uint32_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Vec2, Vec2) noexcept = default;

  double norm() const noexcept { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) noexcept { return (a - b).norm(); }

}  // namespace mscsim
