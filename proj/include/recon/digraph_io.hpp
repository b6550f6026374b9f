#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "recon/digraph.hpp"

namespace recon {

/// Graphviz: one node line per point, then arcs as "i -> j;" in row order.
inline std::string to_dot(const Digraph& g, std::string_view name = "G") {
    std::string out = "digraph " + std::string(name) + " {\n";
    for (int i = 1; i <= g.order(); ++i) out += "  " + std::to_string(i) + ";\n";
    for (int i = 1; i <= g.order(); ++i)
        for (int j = 1; j <= g.order(); ++j)
            if (g.has_arc(i, j)) out += "  " + std::to_string(i) + " -> " + std::to_string(j) + ";\n";
    out += "}\n";
    return out;
}

/// 0/1 adjacency rows, comma-separated, newline-terminated.
inline std::string to_csv(const Digraph& g) {
    std::string out;
    for (int i = 1; i <= g.order(); ++i) {
        for (int j = 1; j <= g.order(); ++j) {
            if (j > 1) out += ',';
            out += g.has_arc(i, j) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

namespace detail {

inline void append_size(std::string& out, std::uint64_t n) {
    if (n <= 62) {
        out += static_cast<char>(n + 63);
    } else if (n <= 258047) {
        out += static_cast<char>(126);
        for (int shift = 12; shift >= 0; shift -= 6) out += static_cast<char>(((n >> shift) & 63) + 63);
    } else {
        out += static_cast<char>(126);
        out += static_cast<char>(126);
        for (int shift = 30; shift >= 0; shift -= 6) out += static_cast<char>(((n >> shift) & 63) + 63);
    }
}

} // namespace detail

/// digraph6: '&', the order, then the p*p row-major adjacency bits packed
/// six to a byte (most significant first, zero padded), each byte + 63.
/// No trailing newline.
inline std::string to_digraph6(const Digraph& g) {
    std::string out = "&";
    const auto p = static_cast<std::uint64_t>(g.order());
    detail::append_size(out, p);
    int chunk = 0;
    int filled = 0;
    for (int i = 1; i <= g.order(); ++i)
        for (int j = 1; j <= g.order(); ++j) {
            chunk = (chunk << 1) | (g.has_arc(i, j) ? 1 : 0);
            if (++filled == 6) {
                out += static_cast<char>(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    if (filled > 0) out += static_cast<char>((chunk << (6 - filled)) + 63);
    return out;
}

inline Digraph from_digraph6(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty() || text.front() != '&') throw std::invalid_argument("digraph6: missing '&' header");
    text.remove_prefix(1);

    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= text.size()) throw std::invalid_argument("digraph6: truncated");
        const int c = static_cast<unsigned char>(text[pos++]);
        if (c < 63 || c > 126) throw std::invalid_argument("digraph6: byte outside 63..126");
        return c - 63;
    };

    std::uint64_t p = 0;
    const int first = next();
    if (first < 63) {
        p = static_cast<std::uint64_t>(first);
    } else {
        int digits = 3;
        if (pos < text.size() && text[pos] == 126) {
            ++pos;
            digits = 6;
        }
        for (int d = 0; d < digits; ++d) p = (p << 6) | static_cast<std::uint64_t>(next());
    }
    if (p > (1U << 16)) throw std::invalid_argument("digraph6: order too large");

    Digraph g(static_cast<int>(p));
    const std::uint64_t total = p * p;
    const std::size_t need = static_cast<std::size_t>((total + 5) / 6);
    if (text.size() - pos != need) throw std::invalid_argument("digraph6: wrong body length");
    std::uint64_t bit = 0;
    for (std::size_t b = 0; b < need; ++b) {
        const int v = next();
        for (int s = 5; s >= 0; --s, ++bit) {
            if (((v >> s) & 1) == 0) continue;
            if (bit >= total) throw std::invalid_argument("digraph6: nonzero padding");
            const int i = static_cast<int>(bit / p) + 1;
            const int j = static_cast<int>(bit % p) + 1;
            g.set_arc(i, j);
        }
    }
    return g;
}

} // namespace recon
