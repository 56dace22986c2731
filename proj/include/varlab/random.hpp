#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace varlab {

  // Stream derivation: block k of a run seeded with s draws from
  // Rng(splitmix64(s ^ splitmix64(k))). Results never depend on how blocks
  // are spread over workers.
  constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // mt19937_64 output is fixed by the standard; the distributions are not,
  // so bounded draws use plain reduction.
  class Rng {
   public:
    explicit Rng(std::uint64_t seed) : _engine(seed) {}

    static Rng for_block(std::uint64_t seed, std::uint64_t block) {
      return Rng(splitmix64(seed ^ splitmix64(block)));
    }

    std::uint64_t next() {
      return _engine();
    }

    std::uint64_t below(std::uint64_t bound) {
      return bound == 0 ? 0 : _engine() % bound;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
      for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[below(i)]);
      }
    }

   private:
    std::mt19937_64 _engine;
  };

}  // namespace varlab
