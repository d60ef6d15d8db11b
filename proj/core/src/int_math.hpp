#pragma once

#include <cstdint>

namespace burstlink::detail {

__extension__ typedef unsigned __int128 u128;

/// floor(a * b / c) without intermediate overflow. c > 0.
inline std::uint64_t mul_div_floor(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b / c);
}

/// ceil(a * b / c) without intermediate overflow. c > 0.
inline std::uint64_t mul_div_ceil(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b + c - 1) / c);
}

} // namespace burstlink::detail
