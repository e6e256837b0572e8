#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdlab {

using Vec = std::vector<double>;
// A time-stamped sequence of nodal fields: Stamps[m][node].
using Stamps = std::vector<Vec>;

// Structured failure carrying a human-readable cause; every precondition
// violation in the library throws this type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }
inline void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

inline constexpr double kPi = 3.14159265358979323846;

// Least-squares slope of y against x.
inline double polyfit_slope(const Vec& x, const Vec& y) {
  double xm = 0, ym = 0;
  std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  return num / den;
}

// splitmix64: the standard public-domain 64-bit mixer. Drives every pair
// subsample in the norm computations; seeded from config for reproducibility.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace bdlab
