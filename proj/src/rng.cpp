#include "bp2/rng.hpp"

#include <cmath>

#include "bp2/errors.hpp"

namespace bp2 {

namespace {

// Below this pmf(0) the walk from zero would start in underflow; start at the
// mode instead. Only the mode-start path touches lgamma.
constexpr double kUnderflowGuard = 1e-280;

// Inverse-transform search starting at the mode. `up(k)` is pmf(k+1)/pmf(k)
// and `down(k)` is pmf(k-1)/pmf(k).
template <class Up, class Down>
std::uint64_t search_from_mode(double u, std::uint64_t mode, double pmf_mode,
                               Up up, Down down) {
  double below = 0.0;
  {
    double p = pmf_mode;
    for (std::uint64_t k = mode; k > 0; --k) {
      p *= down(k);
      if (p == 0.0) break;
      below += p;
    }
  }
  if (u < below) {
    std::uint64_t k = mode - 1;
    double pk = pmf_mode * down(mode);
    double fk = below;
    while (k > 0 && fk - pk >= u) {
      fk -= pk;
      pk *= down(k);
      --k;
    }
    return k;
  }
  std::uint64_t k = mode;
  double pk = pmf_mode;
  double fk = below + pk;
  while (fk < u) {
    pk *= up(k);
    if (pk == 0.0) break;
    ++k;
    fk += pk;
  }
  return k;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(base + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t Rng::binomial(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("binomial: p outside [0,1]");
  if (p == 0.0 || n == 0) return 0;
  if (p == 1.0) return n;
  if (n <= 64) {
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < n; ++i) k += bernoulli(p) ? 1 : 0;
    return k;
  }
  const double odds = p / (1.0 - p);
  const double nd = static_cast<double>(n);
  auto up = [&](std::uint64_t k) {
    const double kd = static_cast<double>(k);
    return (nd - kd) / (kd + 1.0) * odds;
  };
  auto down = [&](std::uint64_t k) {
    const double kd = static_cast<double>(k);
    return kd / (nd - kd + 1.0) / odds;
  };
  const double u = uniform();
  const double pmf0 = std::pow(1.0 - p, nd);
  if (pmf0 > kUnderflowGuard) {
    std::uint64_t k = 0;
    double pk = pmf0;
    double fk = pk;
    while (fk < u && k < n) {
      pk *= up(k);
      ++k;
      fk += pk;
    }
    return k;
  }
  const auto mode = std::min<std::uint64_t>(
      n, static_cast<std::uint64_t>(std::floor((nd + 1.0) * p)));
  const double md = static_cast<double>(mode);
  const double log_pmf = std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) -
                         std::lgamma(nd - md + 1.0) + md * std::log(p) +
                         (nd - md) * std::log1p(-p);
  return std::min(n, search_from_mode(u, mode, std::exp(log_pmf), up, down));
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidArgument("poisson: mean must be finite and nonnegative");
  }
  if (mean == 0.0) return 0;
  auto up = [&](std::uint64_t k) {
    return mean / (static_cast<double>(k) + 1.0);
  };
  auto down = [&](std::uint64_t k) { return static_cast<double>(k) / mean; };
  const double u = uniform();
  const double pmf0 = std::exp(-mean);
  if (pmf0 > kUnderflowGuard) {
    std::uint64_t k = 0;
    double pk = pmf0;
    double fk = pk;
    while (fk < u) {
      pk *= up(k);
      if (pk == 0.0) break;
      ++k;
      fk += pk;
    }
    return k;
  }
  const auto mode = static_cast<std::uint64_t>(std::floor(mean));
  const double md = static_cast<double>(mode);
  const double log_pmf = md * std::log(mean) - mean - std::lgamma(md + 1.0);
  return search_from_mode(u, mode, std::exp(log_pmf), up, down);
}

}  // namespace bp2
