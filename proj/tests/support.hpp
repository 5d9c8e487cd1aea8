#pragma once

#include <random>
#include <string>

#include "mukai/io.hpp"
#include "mukai/lattice.hpp"

namespace testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(MUKAI_FIXTURE_DIR) + "/" + name + ".json";
}

inline mukai::SurfaceContext fixture(const std::string& name) {
    return mukai::load_surface(fixture_path(name));
}

inline const char* const kAllFixtures[] = {"rank1_h2", "rank1_h4", "exe",      "ex46_m2",  "u_minus2",
                                           "u_minus4", "square_u", "square_d4", "square_d9"};

// Fixed seed so failures reproduce.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed2024);
    return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline mukai::DivisorClass random_divisor(std::size_t rank, long box) {
    std::vector<mukai::Integer> c;
    for (std::size_t i = 0; i < rank; ++i) c.emplace_back(uniform(-box, box));
    return mukai::DivisorClass(std::move(c));
}

inline mukai::MukaiVector random_mukai(std::size_t rank, long box) {
    return {uniform(-box, box), random_divisor(rank, box), uniform(-box, box)};
}

}  // namespace testing
