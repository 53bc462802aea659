#include "adoptsim/random.hpp"

#include <cmath>

#include "adoptsim/errors.hpp"

namespace adoptsim {

double Rng::normal() {
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double Rng::truncated_normal(double mean, double sd, double lo, double hi) {
  if (sd == 0.0) return mean;
  if (!(lo <= mean + 8.0 * sd && hi >= mean - 8.0 * sd))
    throw InvalidParameter("truncation window lies far outside the distribution");
  for (;;) {
    const double x = mean + sd * normal();
    if (x >= lo && x <= hi) return x;
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t run_seed(std::uint64_t master, std::uint64_t run_index) {
  return mix64(master ^ (0x9E3779B97F4A7C15ULL * (run_index + 1)));
}

}  // namespace adoptsim
