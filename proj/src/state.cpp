#include "bgossip/state.hpp"

#include <bit>

#include "bgossip/errors.hpp"

namespace bgossip {

std::string to_bitstring(NetworkState s, int n) {
    std::string out(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if (s.get(i)) out[static_cast<std::size_t>(i)] = '1';
    return out;
}

NetworkState parse_bitstring(std::string_view text, int n) {
    if (!text.empty() && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
    if (static_cast<int>(text.size()) != n)
        throw parse_error("bit string '" + std::string(text) + "' has length " + std::to_string(text.size()) +
                          ", expected " + std::to_string(n));
    if (n > 64) throw parse_error("bit strings longer than 64 nodes are not supported");
    NetworkState s;
    for (int i = 0; i < n; ++i) {
        const char c = text[static_cast<std::size_t>(i)];
        if (c != '0' && c != '1') throw parse_error(std::string("bad bit '") + c + "' in state");
        s = s.with(i, c == '1');
    }
    return s;
}

int popcount(NetworkState s) noexcept { return std::popcount(s.bits); }

}  // namespace bgossip
