#include "tilecraft/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tilecraft {

std::uint64_t rng_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    // reject the tail that would bias the modulo
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

double rng_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double rng_gaussian(Rng& rng) {
    // Box-Muller; u1 shifted away from zero so the log stays finite
    double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = rng_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::vector<std::uint64_t> sample_indices(Rng& rng, std::uint64_t n, std::uint64_t k) {
    if (k > n) throw std::invalid_argument("sample larger than population");
    std::vector<std::uint64_t> idx(n);
    for (std::uint64_t i = 0; i < n; ++i) idx[i] = i;
    for (std::uint64_t i = 0; i < k; ++i) {
        std::uint64_t j = i + rng_below(rng, n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace tilecraft
