#ifndef ELASCAT_CORE_HPP
#define ELASCAT_CORE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace elascat {

using Cx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
inline constexpr Cx kImag{0.0, 1.0};

// Thrown when a run is misconfigured (bad parameters, invalid geometry setup).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when linear algebra or an iteration breaks down (singular system,
// CG stall, radius collapse).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// The fixed unitary matrix Q = [[0,1],[-1,0]]; n = Q*tangent is the outward
// normal convention used throughout.
inline Vec2 qrot(Vec2 v) { return {v.y, -v.x}; }

struct Vec2c {
  Cx x{0.0, 0.0}, y{0.0, 0.0};
};

inline Vec2c operator+(Vec2c a, Vec2c b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2c operator-(Vec2c a, Vec2c b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2c operator*(Cx s, Vec2c v) { return {s * v.x, s * v.y}; }
inline Vec2c operator*(Cx s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2c operator*(double s, Vec2c v) { return {s * v.x, s * v.y}; }
inline Vec2c to_complex(Vec2 v) { return {Cx(v.x), Cx(v.y)}; }
inline Cx dot(Vec2c a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline Cx dot(Vec2 a, Vec2c b) { return a.x * b.x + a.y * b.y; }
inline Cx dot(Vec2c a, Vec2c b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2c v) { return std::sqrt(std::norm(v.x) + std::norm(v.y)); }
inline Vec2c qrot(Vec2c v) { return {v.y, -v.x}; }

// Complex 2x2 matrix, row-major entries.
struct Mat2c {
  Cx a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};
};

inline Mat2c operator+(const Mat2c& a, const Mat2c& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}
inline Mat2c operator-(const Mat2c& a, const Mat2c& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}
inline Mat2c operator*(Cx s, const Mat2c& m) {
  return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}
inline Mat2c operator*(double s, const Mat2c& m) { return Cx(s) * m; }
inline Vec2c operator*(const Mat2c& m, Vec2c v) {
  return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
}
inline Vec2c operator*(const Mat2c& m, Vec2 v) { return m * to_complex(v); }
inline Mat2c operator*(const Mat2c& a, const Mat2c& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}
inline Mat2c transpose(const Mat2c& m) { return {m.a11, m.a21, m.a12, m.a22}; }
inline Mat2c identity2() { return {1.0, 0.0, 0.0, 1.0}; }
inline Mat2c qmat() { return {0.0, 1.0, -1.0, 0.0}; }

// outer(a, b) = a b^T
inline Mat2c outer(Vec2c a, Vec2c b) {
  return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
}
inline Mat2c outer(Vec2 a, Vec2 b) { return outer(to_complex(a), to_complex(b)); }
inline Mat2c outer(Vec2 a, Vec2c b) { return outer(to_complex(a), b); }
inline Mat2c outer(Vec2c a, Vec2 b) { return outer(a, to_complex(b)); }

inline double max_abs(const Mat2c& m) {
  return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                  std::max(std::abs(m.a21), std::abs(m.a22)));
}

inline Vec2c column(const Mat2c& m, int j) {
  return j == 0 ? Vec2c{m.a11, m.a21} : Vec2c{m.a12, m.a22};
}

}  // namespace elascat

#endif
