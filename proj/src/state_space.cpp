#include "arw/state_space.hpp"

#include <limits>
#include <stdexcept>

namespace arw {

std::uint64_t composition_count(int k, std::int64_t n) {
  if (k < 1 || n < 0) throw std::invalid_argument("composition_count needs k >= 1, n >= 0");
  // C(n+k-1, k-1) built multiplicatively; every intermediate value is an
  // exact binomial so the division is exact.
  std::uint64_t c = 1;
  for (std::int64_t i = 1; i <= k - 1; ++i) {
    __uint128_t t = static_cast<__uint128_t>(c) * static_cast<std::uint64_t>(n + i);
    t /= static_cast<std::uint64_t>(i);
    if (t > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    c = static_cast<std::uint64_t>(t);
  }
  return c;
}

StateSpace::StateSpace(int k, int n, std::uint64_t cap) : k_(k), n_(n) {
  if (k < 1 || n < 0) throw std::invalid_argument("StateSpace needs k >= 1, n >= 0");
  std::uint64_t total = composition_count(k, n);
  if (total > cap)
    throw std::invalid_argument("state space size " + std::to_string(total) +
                                " exceeds cap " + std::to_string(cap) +
                                "; use the simulation path instead");

  suffix_count_.assign(k + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int m = 0; m <= n; ++m) suffix_count_[1][m] = 1;
  for (int parts = 2; parts <= k; ++parts)
    for (int m = 0; m <= n; ++m)
      suffix_count_[parts][m] = suffix_count_[parts - 1][m] +
                                (m > 0 ? suffix_count_[parts][m - 1] : 0);
  // suffix_count_[p][m] = number of compositions of m into p parts, via the
  // Pascal recurrence C(m+p-1, p-1) = C(m+p-2, p-2) + C(m+p-2, p-1).

  states_.reserve(total);
  Config x = Config::Zero(k);
  x(k - 1) = n;
  if (k == 1) {
    states_.push_back(x);
  } else {
    x.setZero();
    x(k - 1) = n;
    while (true) {
      states_.push_back(x);
      // next composition in lexicographic order: bump the rightmost bumpable
      // prefix coordinate and push the remainder into the last slot
      int i = k - 2;
      while (i >= 0) {
        int tail = 0;
        for (int j = i + 1; j < k; ++j) tail += x(j);
        if (tail > 0) break;
        --i;
      }
      if (i < 0) break;
      x(i) += 1;
      int rest = 0;
      for (int j = i + 1; j < k; ++j) {
        rest += x(j);
        x(j) = 0;
      }
      x(k - 1) = rest - 1;
    }
  }
  if (states_.size() != total) throw std::logic_error("enumeration count mismatch");
}

std::int64_t StateSpace::rank(const Config& x) const {
  if (x.size() != k_) throw std::invalid_argument("configuration has wrong length");
  std::int64_t sum = 0;
  for (int i = 0; i < k_; ++i) {
    if (x(i) < 0) throw std::invalid_argument("negative occupancy");
    sum += x(i);
  }
  if (sum != n_) throw std::invalid_argument("occupancies do not sum to n");

  std::uint64_t r = 0;
  int remaining = n_;
  for (int i = 0; i < k_ - 1; ++i) {
    int parts = k_ - i - 1;
    for (int c = 0; c < x(i); ++c) r += suffix_count_[parts][remaining - c];
    remaining -= x(i);
  }
  return static_cast<std::int64_t>(r);
}

std::shared_ptr<const StateSpace> enumerate_configurations(int k, int n, std::uint64_t cap) {
  return std::make_shared<const StateSpace>(k, n, cap);
}

std::vector<NeighborConfig> one_step_neighbors(const Config& x, const Graph& g) {
  if (x.size() != g.k) throw std::invalid_argument("configuration/graph size mismatch");
  std::vector<NeighborConfig> out;
  out.push_back({x, Move{}});  // stay (all i = j moves aggregate here)
  for (int i = 0; i < g.k; ++i) {
    if (x(i) == 0) continue;
    for (int j : g.neighbors(i)) {
      Config y = x;
      y(i) -= 1;
      y(j) += 1;
      out.push_back({std::move(y), Move{i, j}});
    }
  }
  return out;
}

}  // namespace arw
