#pragma once

// Arithmetic over the 256-element field GF(2^8) with the usual
// x^8 + x^4 + x^3 + x^2 + 1 reduction polynomial. Log/antilog tables are
// built at compile time; 2 is primitive for this polynomial.

#include <array>
#include <cstdint>

namespace radon::gf {

inline constexpr unsigned kPoly = 0x11D;

struct Tables {
    std::array<std::uint8_t, 512> exp{};
    std::array<std::uint8_t, 256> log{};
};

consteval Tables make_tables() {
    Tables t{};
    unsigned x = 1;
    for (int i = 0; i < 255; ++i) {
        t.exp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x);
        t.log[x] = static_cast<std::uint8_t>(i);
        x <<= 1;
        if (x & 0x100u) x ^= kPoly;
    }
    // doubled exp table lets mul skip the mod-255 step
    for (int i = 255; i < 512; ++i) t.exp[static_cast<std::size_t>(i)] = t.exp[static_cast<std::size_t>(i - 255)];
    return t;
}

inline constexpr Tables kTables = make_tables();

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    return kTables.exp[static_cast<std::size_t>(kTables.log[a]) + kTables.log[b]];
}

inline std::uint8_t inv(std::uint8_t a) {
    // caller must not pass 0
    return kTables.exp[255 - kTables.log[a]];
}

inline std::uint8_t div(std::uint8_t a, std::uint8_t b) {
    if (a == 0) return 0;
    return kTables.exp[static_cast<std::size_t>(kTables.log[a]) + 255 - kTables.log[b]];
}

inline std::uint8_t pow(std::uint8_t a, unsigned e) {
    std::uint8_t r = 1;
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

}  // namespace radon::gf
