#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "arw/graph.hpp"

namespace arw {

// Occupancy vector: entry i counts the particles at vertex i.
using Config = Eigen::VectorXi;

struct ConfigLess {
  bool operator()(const Config& a, const Config& b) const {
    return std::lexicographical_compare(a.data(), a.data() + a.size(),
                                        b.data(), b.data() + b.size());
  }
};

// Number of occupancy vectors of n particles on k vertices, C(n+k-1, k-1),
// saturating at UINT64_MAX on overflow.
std::uint64_t composition_count(int k, std::int64_t n);

// All configurations of n particles on k vertices in lexicographic order,
// with combinatorial rank/unrank for matrix indexing.
class StateSpace {
 public:
  StateSpace(int k, int n, std::uint64_t cap = 200000);

  int k() const { return k_; }
  int n() const { return n_; }
  std::int64_t size() const { return static_cast<std::int64_t>(states_.size()); }
  const Config& state(std::int64_t r) const { return states_[r]; }
  const std::vector<Config>& states() const { return states_; }

  std::int64_t rank(const Config& x) const;

 private:
  int k_, n_;
  std::vector<Config> states_;
  std::vector<std::vector<std::uint64_t>> suffix_count_;  // [parts][m]
};

std::shared_ptr<const StateSpace> enumerate_configurations(int k, int n,
                                                           std::uint64_t cap = 200000);

struct Move {
  int from = -1, to = -1;  // from == to == -1 marks the aggregated stay entry
  bool is_stay() const { return from < 0; }
};

struct NeighborConfig {
  Config config;
  Move move;
};

// All configurations reachable in one step (one particle slides along an edge),
// plus x itself once for the i = j moves.
std::vector<NeighborConfig> one_step_neighbors(const Config& x, const Graph& g);

}  // namespace arw
