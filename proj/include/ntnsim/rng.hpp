#pragma once
#include <cstdint>
#include <random>

namespace ntnsim {

// splitmix64: used to derive independent child seeds from a master seed so
// that parallel workers never share an engine stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    std::uint64_t b = splitmix64(s);
    return a ^ b;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, std::uint64_t index) {
    return Rng(child_seed(master, index));
}

} // namespace ntnsim
