#include "ppcenter/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ppcenter/errors.hpp"
#include "ppcenter/rng.hpp"

namespace ppc {

namespace {

std::string site_pair(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

Instance::Instance(int p, int K, std::vector<double> dist, std::vector<double> q)
    : n_(static_cast<int>(q.size())), p_(p), K_(K), dist_(std::move(dist)), q_(std::move(q)) {
  if (n_ < 1) throw std::invalid_argument("instance needs at least one site");
  if (dist_.size() != static_cast<std::size_t>(n_) * n_) {
    throw std::invalid_argument("distance matrix is not " + std::to_string(n_) + "x" +
                                std::to_string(n_));
  }
  if (p_ < 2 || p_ > n_) {
    throw std::invalid_argument("p = " + std::to_string(p_) + " out of range [2, n]");
  }
  if (K_ < 1 || K_ > n_ - p_) {
    throw std::invalid_argument("K = " + std::to_string(K_) + " out of range [1, n-p]");
  }
  for (int i = 0; i < n_; ++i) {
    if (!(q_[i] > 0.0 && q_[i] <= 1.0)) {
      throw std::invalid_argument("q of site " + std::to_string(i + 1) + " not in (0, 1]");
    }
    for (int j = 0; j < n_; ++j) {
      const double v = d(i, j);
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite distance " + site_pair(i, j));
      if (i == j && v != 0.0) {
        throw std::invalid_argument("nonzero diagonal distance at site " + std::to_string(i + 1));
      }
      if (i != j && !(v > 0.0)) {
        throw std::invalid_argument("non-positive off-diagonal distance " + site_pair(i, j));
      }
    }
  }
}

bool Instance::homogeneous() const {
  return std::all_of(q_.begin(), q_.end(), [&](double v) { return v == q_[0]; });
}

bool Instance::symmetric() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (d(i, j) != d(j, i)) return false;
    }
  }
  return true;
}

Instance Instance::with_truncation(int K) const { return Instance(p_, K, dist_, q_); }

Instance Instance::with_centers(int p) const {
  return Instance(p, std::min(K_, n_ - p), dist_, q_);
}

Instance Instance::with_probabilities(std::vector<double> q) const {
  return Instance(p_, K_, dist_, std::move(q));
}

// --- parsing helpers -------------------------------------------------------

namespace {

struct Line {
  int number;  // 1-based, for messages
  std::vector<std::string> tokens;
};

std::vector<Line> significant_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos || text[first] == '#') continue;
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

template <class T>
T parse_number(const std::string& tok, int line) {
  T value{};
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  if (!tok.empty() && tok[0] == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) fail(line, "malformed number '" + tok + "'");
  return value;
}

void expect_tokens(const Line& line, std::size_t count, const char* what) {
  if (line.tokens.size() != count) {
    fail(line.number, std::string("expected ") + std::to_string(count) + " fields (" + what +
                          "), found " + std::to_string(line.tokens.size()));
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// --- ORLIB -----------------------------------------------------------------

OrlibGraph parse_orlib(std::istream& in) {
  const auto lines = significant_lines(in);
  if (lines.empty()) throw ParseError("missing header");
  const Line& header = lines.front();
  expect_tokens(header, 3, "n m p");
  OrlibGraph g;
  g.n = parse_number<int>(header.tokens[0], header.number);
  const int m = parse_number<int>(header.tokens[1], header.number);
  g.p = parse_number<int>(header.tokens[2], header.number);
  if (g.n < 1 || m < 0 || g.p < 0) fail(header.number, "header values out of range");
  if (lines.size() - 1 != static_cast<std::size_t>(m)) {
    throw ParseError("header announces " + std::to_string(m) + " edges, file has " +
                     std::to_string(lines.size() - 1));
  }
  std::map<std::pair<int, int>, long long> seen;
  g.edges.reserve(m);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    expect_tokens(line, 3, "u v w");
    Edge e{parse_number<int>(line.tokens[0], line.number),
           parse_number<int>(line.tokens[1], line.number),
           parse_number<long long>(line.tokens[2], line.number)};
    if (e.u < 1 || e.u > g.n || e.v < 1 || e.v > g.n) {
      fail(line.number, "endpoint out of [1," + std::to_string(g.n) + "]");
    }
    if (e.w < 0) fail(line.number, "negative weight");
    const auto key = std::minmax(e.u, e.v);
    auto [it, inserted] = seen.emplace(key, e.w);
    if (!inserted && it->second != e.w) {
      fail(line.number, "duplicate edge " + std::to_string(key.first) + "-" +
                            std::to_string(key.second) + " with conflicting weight");
    }
    g.edges.push_back(e);
  }
  return g;
}

std::vector<double> all_pairs_shortest(const OrlibGraph& graph) {
  const int n = graph.n;
  std::vector<std::vector<std::pair<int, long long>>> adj(n);
  for (const Edge& e : graph.edges) {
    adj[e.u - 1].emplace_back(e.v - 1, e.w);
    adj[e.v - 1].emplace_back(e.u - 1, e.w);
  }
  constexpr long long kInf = std::numeric_limits<long long>::max();
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  std::vector<long long> dist(n);
  using Item = std::pair<long long, int>;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0;
    heap.emplace(0, s);
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du != dist[u]) continue;
      for (auto [v, w] : adj[u]) {
        if (du + w < dist[v]) {
          dist[v] = du + w;
          heap.emplace(dist[v], v);
        }
      }
    }
    for (int t = 0; t < n; ++t) {
      if (dist[t] == kInf) {
        throw std::invalid_argument("graph is disconnected: no path between " +
                                    std::to_string(s + 1) + " and " + std::to_string(t + 1));
      }
      out[static_cast<std::size_t>(s) * n + t] = static_cast<double>(dist[t]);
    }
  }
  return out;
}

std::vector<double> gen_probabilities(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> hundredths(1, 100);
  std::vector<double> q(n);
  for (auto& v : q) v = hundredths(rng) / 100.0;
  return q;
}

Instance extract_submatrix(std::span<const double> full, int fullN, std::span<const int> sites,
                           int p, int K, std::uint64_t qseed) {
  if (full.size() != static_cast<std::size_t>(fullN) * fullN) {
    throw std::invalid_argument("full matrix size does not match its dimension");
  }
  std::vector<char> used(fullN, 0);
  for (int s : sites) {
    if (s < 0 || s >= fullN) {
      throw std::invalid_argument("site index " + std::to_string(s + 1) + " out of range [1," +
                                  std::to_string(fullN) + "]");
    }
    if (used[s]) throw std::invalid_argument("duplicate site " + std::to_string(s + 1));
    used[s] = 1;
  }
  const int n = static_cast<int>(sites.size());
  if (n < p + 1) throw std::invalid_argument("need at least p+1 sites");
  std::vector<double> dist(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      dist[static_cast<std::size_t>(a) * n + b] =
          full[static_cast<std::size_t>(sites[a]) * fullN + sites[b]];
    }
  }
  return Instance(p, K, std::move(dist), gen_probabilities(n, qseed));
}

Instance from_coordinates(std::span<const Point> points, std::vector<double> q, int p, int K) {
  const int n = static_cast<int>(points.size());
  if (q.size() != points.size()) {
    throw std::invalid_argument("coordinate and probability counts differ");
  }
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = std::hypot(points[i].x - points[j].x, points[i].y - points[j].y);
      if (v == 0.0) {
        throw std::invalid_argument("coincident sites produce zero off-diagonal distance " +
                                    site_pair(i, j));
      }
      dist[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  return Instance(p, K, std::move(dist), std::move(q));
}

// --- native formats --------------------------------------------------------

Instance read_instance(std::istream& in) {
  const auto lines = significant_lines(in);
  if (lines.empty()) throw ParseError("missing header");
  expect_tokens(lines[0], 3, "n p K");
  const int n = parse_number<int>(lines[0].tokens[0], lines[0].number);
  const int p = parse_number<int>(lines[0].tokens[1], lines[0].number);
  const int K = parse_number<int>(lines[0].tokens[2], lines[0].number);
  if (n < 1) fail(lines[0].number, "n must be positive");
  if (lines.size() != static_cast<std::size_t>(n) + 2) {
    throw ParseError("expected " + std::to_string(n + 2) + " data lines, found " +
                     std::to_string(lines.size()));
  }
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 1; i <= n; ++i) {
    expect_tokens(lines[i], n, "distance row");
    for (const auto& tok : lines[i].tokens) dist.push_back(parse_number<double>(tok, lines[i].number));
  }
  const Line& qline = lines[n + 1];
  expect_tokens(qline, n, "probabilities");
  std::vector<double> q;
  for (const auto& tok : qline.tokens) q.push_back(parse_number<double>(tok, qline.number));
  try {
    return Instance(p, K, std::move(dist), std::move(q));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

void write_instance(std::ostream& out, const Instance& inst) {
  const int n = inst.n();
  out << n << ' ' << inst.p() << ' ' << inst.K() << '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << format_double(inst.d(i, j));
    out << '\n';
  }
  for (int i = 0; i < n; ++i) out << (i ? " " : "") << format_double(inst.q(i));
  out << '\n';
}

CoordinateFile read_coordinates(std::istream& in) {
  const auto lines = significant_lines(in);
  if (lines.empty()) throw ParseError("missing header");
  expect_tokens(lines[0], 3, "n p K");
  const int n = parse_number<int>(lines[0].tokens[0], lines[0].number);
  CoordinateFile file;
  file.p = parse_number<int>(lines[0].tokens[1], lines[0].number);
  file.K = parse_number<int>(lines[0].tokens[2], lines[0].number);
  if (n < 1) fail(lines[0].number, "n must be positive");
  if (lines.size() != static_cast<std::size_t>(n) + 1) {
    throw ParseError("expected " + std::to_string(n + 1) + " data lines, found " +
                     std::to_string(lines.size()));
  }
  for (int i = 1; i <= n; ++i) {
    expect_tokens(lines[i], 3, "x y q");
    file.points.push_back({parse_number<double>(lines[i].tokens[0], lines[i].number),
                           parse_number<double>(lines[i].tokens[1], lines[i].number)});
    file.q.push_back(parse_number<double>(lines[i].tokens[2], lines[i].number));
  }
  return file;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_instance(in);
}

void save_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_instance(out, inst);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace ppc
