#include "ayah/random.hpp"

#include <string>

namespace ayah {

Pcg32::Pcg32(std::uint64_t init_state, std::uint64_t stream) noexcept
    : inc_((stream << 1u) | 1u) {
  next();
  state_ += init_state;
  next();
}

std::uint32_t Pcg32::next() noexcept {
  std::uint64_t old = state_;
  state_ = old * 6364136223846793005ULL + inc_;
  auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
}

std::uint32_t Pcg32::bounded(std::uint32_t bound) noexcept {
  std::uint32_t threshold = (-bound) % bound;
  while (true) {
    std::uint32_t r = next();
    if (r >= threshold)
      return r % bound;
  }
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Pcg32 keyed_stream(std::uint64_t seed, std::string_view purpose,
                   std::string_view key) noexcept {
  std::string material;
  material.reserve(purpose.size() + 1 + key.size());
  material.append(purpose);
  material.push_back('\x1f');
  material.append(key);
  const std::uint64_t k = fnv1a64(material);
  return Pcg32(splitmix64(seed ^ k), splitmix64(k + 0x632be59bd9b4e019ULL));
}

} // namespace ayah
