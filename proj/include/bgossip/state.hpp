#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bgossip {

// Packed node values: bit i holds the value of 0-indexed node i.
struct NetworkState {
    std::uint64_t bits = 0;

    constexpr int get(int node) const noexcept { return static_cast<int>((bits >> node) & 1u); }
    constexpr NetworkState with(int node, int value) const noexcept {
        return {value ? (bits | (std::uint64_t{1} << node)) : (bits & ~(std::uint64_t{1} << node))};
    }

    static constexpr NetworkState zeros() noexcept { return {0}; }
    static constexpr NetworkState ones(int n) noexcept {
        return {n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
    }

    friend constexpr bool operator==(NetworkState, NetworkState) = default;
    friend constexpr auto operator<=>(NetworkState, NetworkState) = default;
};

// Node 1 is the leftmost character.
std::string to_bitstring(NetworkState s, int n);

// Throws parse_error on characters other than 0/1 or a length different from n.
NetworkState parse_bitstring(std::string_view text, int n);

int popcount(NetworkState s) noexcept;

}  // namespace bgossip
