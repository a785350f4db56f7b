#pragma once

#include <filesystem>
#include <ostream>
#include <random>
#include <string>

#include "padicrama/rational.hpp"
#include "padicrama/real.hpp"

namespace padicrama::test {

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(PADICRAMA_TEST_DATA_DIR) / rel;
}

// Fixed seed so failures reproduce.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed'2024ULL);
  return gen;
}

inline long uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

/// Random rational with |num|, den <= height.
inline Rational random_rational(long height) {
  const long num = uniform(-height, height);
  const long den = uniform(1, height);
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace padicrama::test

namespace padicrama {
// gtest printers
inline void PrintTo(const Real& x, std::ostream* os) { *os << x.to_string(20); }
inline void PrintTo(const Rational& q, std::ostream* os) { *os << q.to_string(); }
}  // namespace padicrama
