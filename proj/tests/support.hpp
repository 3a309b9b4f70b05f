#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "alexgeo/space.hpp"

namespace alexgeo::testing {

// Hand-rolled generator: fixed seed per test so failures reproduce.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  Point point(const Space& S) { return S.random_point(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::string data_file(const std::string& name) { return std::string(ALEXGEO_TEST_DATA) + "/" + name; }

}  // namespace alexgeo::testing
