#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ppc {

/// A K-truncated probabilistic p-center instance.
///
/// Sites are indexed 0..n-1 internally; every text format and the CLI use
/// 1-based site numbers. Positions in the ordered list of assignment
/// distances are 1-based ranks (position n holds the largest distance), and
/// the objective only looks at positions n-K+1..n.
///
/// The distance matrix need not be symmetric nor metric. Construction
/// validates every invariant and throws std::invalid_argument on violation;
/// instances are immutable afterwards.
class Instance {
 public:
  Instance(int p, int K, std::vector<double> dist, std::vector<double> q);

  int n() const { return n_; }
  int p() const { return p_; }
  int K() const { return K_; }

  double d(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
  double q(int i) const { return q_[i]; }

  std::span<const double> row(int i) const {
    return std::span<const double>(dist_).subspan(static_cast<std::size_t>(i) * n_, n_);
  }
  std::span<const double> distances() const { return dist_; }
  std::span<const double> probabilities() const { return q_; }

  // First position of the truncated window T = {n-K+1, ..., n}.
  int first_position() const { return n_ - K_ + 1; }

  bool homogeneous() const;
  bool symmetric() const;

  Instance with_truncation(int K) const;
  Instance with_centers(int p) const;
  Instance with_probabilities(std::vector<double> q) const;

 private:
  int n_;
  int p_;
  int K_;
  std::vector<double> dist_;
  std::vector<double> q_;
};

/// Total order on assignments (customer -> center): ascending distance, then
/// descending demand probability (the likelier customer takes the lower
/// position), then customer index, then center index.
struct OrderKey {
  double distance;
  double negQ;
  int customer;
  int center;

  friend auto operator<=>(const OrderKey&, const OrderKey&) = default;
};

inline OrderKey order_key(const Instance& inst, int customer, int center) {
  return {inst.d(customer, center), -inst.q(customer), customer, center};
}

// Site i prefers center a over b (distance, then lower index).
inline bool prefers(const Instance& inst, int i, int a, int b) {
  const double da = inst.d(i, a);
  const double db = inst.d(i, b);
  return da < db || (da == db && a < b);
}

// --- ORLIB pmed ------------------------------------------------------------

struct Edge {
  int u;  // 1-based
  int v;  // 1-based
  long long w;
};

struct OrlibGraph {
  int n = 0;
  int p = 0;
  std::vector<Edge> edges;
};

// Reads the ORLIB pmed format: "n m p" followed by m lines "u v w".
// Throws ParseError naming the offending line.
OrlibGraph parse_orlib(std::istream& in);

// All-pairs shortest paths (row-major n*n) over the undirected graph.
// Throws std::invalid_argument naming an unreachable pair.
std::vector<double> all_pairs_shortest(const OrlibGraph& graph);

// Instance over `sites` (0-based rows/columns of `full`, an fullN x fullN
// matrix). Distances are copied verbatim; q comes from gen_probabilities.
Instance extract_submatrix(std::span<const double> full, int fullN,
                           std::span<const int> sites, int p, int K,
                           std::uint64_t qseed);

// n values drawn uniformly from {0.01, 0.02, ..., 1.00}.
std::vector<double> gen_probabilities(int n, std::uint64_t seed);

// --- Coordinates -----------------------------------------------------------

struct Point {
  double x;
  double y;
};

// Euclidean instance; rejects coincident sites.
Instance from_coordinates(std::span<const Point> points, std::vector<double> q,
                          int p, int K);

// --- Native text formats ---------------------------------------------------

// "n p K", n rows of n distances, one row of n probabilities. '#' comments.
Instance read_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& inst);

// "n p K", then n lines "x y q".
struct CoordinateFile {
  int p = 0;
  int K = 0;
  std::vector<Point> points;
  std::vector<double> q;
};
CoordinateFile read_coordinates(std::istream& in);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

}  // namespace ppc
