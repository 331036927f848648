#pragma once

// Text encodings.
//
//   graph6  standard underlying-graph encoding (McKay): size prefix, then the
//           upper triangle in column order x(0,1) x(0,2) x(1,2) x(0,3) ...
//           packed six bits per byte, offset by 63.
//   sg6     "<graph6>:<hex>" where <hex> carries one bit per edge, edges in
//           lexicographic (i,j) order, 1 = negative, packed MSB first into
//           lowercase hex digits and zero-padded to ceil(m/4) digits.

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "sgx/errors.hpp"
#include "sgx/signed_graph.hpp"

namespace sgx {

namespace detail {

inline void put_size(std::string& out, std::size_t n) {
  auto put6 = [&](std::uint64_t x, int groups) {
    for (int g = groups - 1; g >= 0; --g) out.push_back(static_cast<char>(63 + ((x >> (6 * g)) & 63)));
  };
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back('~');
    put6(n, 3);
  } else {
    out.append("~~");
    put6(n, 6);
  }
}

inline int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace detail

inline std::string encode_graph6(const SignedGraph& g) {
  const std::size_t n = g.order();
  std::string out;
  detail::put_size(out, n);
  int acc = 0, nbits = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
  return out;
}

/// Decodes a graph6 string into an all-positive signed graph.
inline SignedGraph decode_graph6(std::string_view text) {
  std::size_t pos = 0;
  auto byte = [&](std::size_t at) -> int {
    if (at >= text.size()) throw ParseError("graph6 text truncated", at);
    const int c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw ParseError("graph6 byte out of range", at);
    return c - 63;
  };
  std::size_t n = 0;
  if (text.empty()) throw ParseError("empty graph6 text", 0);
  if (text[0] != '~') {
    n = static_cast<std::size_t>(byte(0));
    pos = 1;
  } else if (text.size() > 1 && text[1] == '~') {
    for (std::size_t k = 2; k < 8; ++k) n = (n << 6) | static_cast<std::size_t>(byte(k));
    pos = 8;
  } else {
    for (std::size_t k = 1; k < 4; ++k) n = (n << 6) | static_cast<std::size_t>(byte(k));
    pos = 4;
  }
  const std::size_t bits = pair_count(n);
  const std::size_t body = (bits + 5) / 6;
  if (text.size() != pos + body)
    throw ParseError("graph6 body has " + std::to_string(text.size() - std::min(text.size(), pos)) +
                         " bytes, expected " + std::to_string(body),
                     std::min(text.size(), pos + body));
  SignedGraph::Builder b(n);
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int v = byte(pos + k / 6);
      if ((v >> (5 - k % 6)) & 1) b.add_edge(i, j);
    }
  }
  if (k % 6 != 0) {
    const std::size_t last = pos + k / 6;
    if (byte(last) & ((1 << (6 - k % 6)) - 1)) throw ParseError("nonzero graph6 padding bits", last);
  }
  return std::move(b).build();
}

inline std::string encode_sg6(const SignedGraph& g) {
  std::string out = encode_graph6(g);
  out.push_back(':');
  static constexpr char digits[] = "0123456789abcdef";
  int acc = 0, nbits = 0;
  for (const auto& e : g.edges()) {
    acc = (acc << 1) | (e.sign == Sign::negative ? 1 : 0);
    if (++nbits == 4) {
      out.push_back(digits[acc]);
      acc = nbits = 0;
    }
  }
  if (nbits > 0) out.push_back(digits[acc << (4 - nbits)]);
  return out;
}

inline SignedGraph decode_sg6(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) throw ParseError("missing ':' separator in sg6 line", line.size());
  const SignedGraph g = decode_graph6(line.substr(0, colon));
  const std::string_view hex = line.substr(colon + 1);
  const std::size_t m = g.size();
  const std::size_t want = (m + 3) / 4;
  if (hex.size() != want)
    throw ParseError("sign field has " + std::to_string(hex.size()) + " hex digits, expected " + std::to_string(want),
                     colon + 1 + std::min(hex.size(), want));
  SignedGraph::Builder b(g);
  const auto edges = g.edges();
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int v = detail::hex_value(hex[d]);
    if (v < 0) throw ParseError("invalid hex digit in sign field", colon + 1 + d);
    for (int bit = 0; bit < 4; ++bit) {
      const std::size_t e = 4 * d + static_cast<std::size_t>(bit);
      const bool neg = (v >> (3 - bit)) & 1;
      if (e >= m) {
        if (neg) throw ParseError("nonzero padding bit in sign field", colon + 1 + d);
        continue;
      }
      if (neg) b.set_sign(edges[e].u, edges[e].v, Sign::negative);
    }
  }
  return std::move(b).build();
}

struct Sg6Record {
  std::size_t line_number;  // 1-based
  SignedGraph graph;
};

/// Reads newline-delimited sg6 lines, skipping blank and '#' comment lines.
/// Parse failures are rethrown with the line number prefixed.
inline std::vector<Sg6Record> read_sg6_stream(std::istream& in) {
  std::vector<Sg6Record> out;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back({ln, decode_sg6(std::string_view(line).substr(first))});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(ln) + ": " + e.reason, e.position);
    }
  }
  return out;
}

}  // namespace sgx
