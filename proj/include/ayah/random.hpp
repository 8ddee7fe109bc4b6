#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace ayah {

/// PCG32 (XSH-RR output over a 64-bit LCG state), O'Neill 2014. The
/// algorithm is fixed so that every draw is reproducible across platforms
/// and standard libraries; nothing here goes through <random>.
class Pcg32 {
public:
  Pcg32(std::uint64_t init_state, std::uint64_t stream) noexcept;

  std::uint32_t next() noexcept;

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint32_t bounded(std::uint32_t bound) noexcept;

private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a over the bytes of `s`.
std::uint64_t fnv1a64(std::string_view s) noexcept;

/// An independent generator per (seed, purpose, key). Keying by question id
/// means adding or removing questions never perturbs another question's draws.
Pcg32 keyed_stream(std::uint64_t seed, std::string_view purpose,
                   std::string_view key) noexcept;

/// Fisher-Yates, drawing j uniformly from [0, i] for i = n-1 down to 1.
template <typename T> void shuffle(std::span<T> items, Pcg32 &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = rng.bounded(static_cast<std::uint32_t>(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

} // namespace ayah
