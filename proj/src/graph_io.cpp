#include "amen/graph_io.hpp"

#include <charconv>
#include <cstdint>
#include <vector>

#include "amen/error.hpp"

namespace amen {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw GraphError(GraphError::Code::Malformed, -1,
                   "edge list line " + std::to_string(line) + ": " + why);
}

// Splits a data line into integer fields.
std::vector<long long> fields(std::string_view line, std::size_t lineno) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc() || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t'))
      malformed(lineno, "expected integer");
    i = static_cast<std::size_t>(ptr - line.data());
    out.push_back(value);
  }
  return out;
}

}  // namespace

Graph parse_edge_list(std::string_view text, EdgeListReport* report) {
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto f = fields(line, lineno);
    if (f.size() != 2) malformed(lineno, "expected two integers");
    if (n < 0) {
      if (f[0] < 0 || f[1] < 0 || f[0] > INT32_MAX) malformed(lineno, "bad header");
      n = f[0];
      m = f[1];
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (static_cast<long long>(edges.size()) >= m) malformed(lineno, "more edges than declared");
    auto endpoint = [&](long long x) {
      if (x < 0 || x >= n)
        throw GraphError(GraphError::Code::OutOfRange, x,
                         "edge list line " + std::to_string(lineno) + ": vertex " + std::to_string(x) +
                             " out of range");
      return static_cast<Vertex>(x);
    };
    edges.emplace_back(endpoint(f[0]), endpoint(f[1]));
  }
  if (n < 0) malformed(lineno, "missing header");
  if (static_cast<long long>(edges.size()) != m)
    malformed(lineno, "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  return Graph::from_edges(static_cast<int>(n), edges, report);
}

std::string write_edge_list(const Graph& g) {
  std::string out = std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
  for (auto [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

Graph decode_graph6(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) pos = header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  auto sixbits = [&](std::size_t at) -> std::uint64_t {
    if (at >= text.size()) throw Graph6Error(at, "unexpected end of input");
    const auto c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw Graph6Error(at, "byte outside 63..126");
    return c - 63u;
  };

  std::uint64_t n = 0;
  if (pos >= text.size()) throw Graph6Error(pos, "missing vertex count");
  if (static_cast<unsigned char>(text[pos]) != 126) {
    n = sixbits(pos);
    pos += 1;
  } else if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) != 126) {
    for (std::size_t k = 1; k <= 3; ++k) n = (n << 6) | sixbits(pos + k);
    if (n < 63) throw Graph6Error(pos, "non-minimal long form");
    pos += 4;
  } else {
    for (std::size_t k = 2; k <= 7; ++k) n = (n << 6) | sixbits(pos + k);
    if (n < 258048) throw Graph6Error(pos, "non-minimal long form");
    pos += 8;
  }
  if (n > static_cast<std::uint64_t>(INT32_MAX)) throw Graph6Error(pos, "vertex count too large");

  const std::uint64_t bits = n * (n - (n > 0)) / 2;
  const std::uint64_t bytes = (bits + 5) / 6;
  if (text.size() - pos != bytes)
    throw Graph6Error(pos, "expected " + std::to_string(bytes) + " adjacency bytes, found " +
                               std::to_string(text.size() - pos));

  std::vector<Edge> edges;
  std::uint64_t k = 0;
  for (Vertex j = 1; j < static_cast<Vertex>(n); ++j)
    for (Vertex i = 0; i < j; ++i, ++k) {
      const std::uint64_t byte = sixbits(pos + k / 6);
      if ((byte >> (5 - k % 6)) & 1u) edges.emplace_back(i, j);
    }
  if (k % 6 != 0) {
    const std::uint64_t last = sixbits(pos + k / 6);
    if (last & ((1u << (6 - k % 6)) - 1u)) throw Graph6Error(pos + k / 6, "nonzero padding bits");
  }
  return Graph::from_edges(static_cast<int>(n), edges);
}

std::string encode_graph6(const Graph& g) {
  std::string out;
  const auto n = static_cast<std::uint64_t>(g.order());
  if (n <= 62) {
    out += static_cast<char>(63 + n);
  } else if (n <= 258047) {
    out += static_cast<char>(126);
    for (int shift = 12; shift >= 0; shift -= 6) out += static_cast<char>(63 + ((n >> shift) & 63u));
  } else {
    out += static_cast<char>(126);
    out += static_cast<char>(126);
    for (int shift = 30; shift >= 0; shift -= 6) out += static_cast<char>(63 + ((n >> shift) & 63u));
  }
  unsigned acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < g.order(); ++j) {
    auto row = g.neighbors(j);
    auto it = row.begin();
    for (Vertex i = 0; i < j; ++i) {
      while (it != row.end() && *it < i) ++it;
      acc = (acc << 1) | (it != row.end() && *it == i ? 1u : 0u);
      if (++filled == 6) {
        out += static_cast<char>(63 + acc);
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out += static_cast<char>(63 + (acc << (6 - filled)));
  return out;
}

GraphFormat format_from_path(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  return ends_with(".g6") || ends_with(".graph6") ? GraphFormat::Graph6 : GraphFormat::EdgeList;
}

Graph parse_graph(std::string_view text, GraphFormat format, EdgeListReport* report) {
  if (format == GraphFormat::Graph6) return decode_graph6(trim(text));
  return parse_edge_list(text, report);
}

}  // namespace amen
