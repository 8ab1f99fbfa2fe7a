#include "carnot/random.hpp"

#include <cmath>

namespace carnot {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream)
    : state_(mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL) ^ (index * 0xd1b54a32d192ed03ULL))) {}

CounterRng::result_type CounterRng::operator()() {
  // splitmix64 step
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Estimate mean_estimate(double sum, double sum_sq, std::uint64_t n, std::uint64_t seed) {
  Estimate e;
  e.samples = n;
  e.seed = seed;
  if (n == 0)
    return e;
  const double dn = static_cast<double>(n);
  e.value = sum / dn;
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - dn * e.value * e.value) / (dn - 1.0));
    e.std_error = std::sqrt(var / dn);
  }
  return e;
}

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t seed) {
  Estimate e;
  e.samples = n;
  e.seed = seed;
  if (n == 0)
    return e;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  e.value = p;
  e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return e;
}

} // namespace carnot
