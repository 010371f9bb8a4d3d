#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qps/numerics.hpp"

namespace qps::test {

// Small deterministic generator for property tests (splitmix64).
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double a = 0.0, double b = 1.0) { return a + (b - a) * (static_cast<double>(next() >> 11) * 0x1.0p-53); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  cplx complex(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }
  cplx upper(double xr, double ylo, double yhi) { return {uniform(-xr, xr), uniform(ylo, yhi)}; }
  cplx in_disk(double rmax) { return std::polar(rmax * std::sqrt(uniform()), uniform(0.0, 2.0 * kPi)); }

  ComplexMatrix matrix(std::size_t n, std::size_t m) {
    ComplexMatrix a(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) a(i, j) = complex();
    return a;
  }
  std::vector<cplx> vector(std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = complex();
    return v;
  }

 private:
  std::uint64_t s_;
};

inline bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace qps::test
