#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "arw/state_space.hpp"

using namespace arw;

namespace {

Config make_config(std::initializer_list<int> vals) {
  Config c(static_cast<int>(vals.size()));
  int i = 0;
  for (int v : vals) c(i++) = v;
  return c;
}

}  // namespace

TEST_CASE("enumeration order and size") {
  StateSpace s(2, 2);
  REQUIRE(s.size() == 3);
  CHECK(s.state(0) == make_config({0, 2}));
  CHECK(s.state(1) == make_config({1, 1}));
  CHECK(s.state(2) == make_config({2, 0}));

  CHECK(StateSpace(3, 2).size() == 6);  // C(4, 2)
  CHECK(StateSpace(1, 5).size() == 1);
  CHECK(composition_count(4, 100) == 176851);
  CHECK_THROWS(StateSpace(4, 100, /*cap=*/1000));
}

TEST_CASE("rank and unrank are mutually inverse") {
  for (int k = 1; k <= 4; ++k)
    for (int n = 0; n <= 8; ++n) {
      StateSpace s(k, n);
      // hash-map cross-check of the combinatorial rank
      std::map<std::vector<int>, std::int64_t> index;
      for (std::int64_t r = 0; r < s.size(); ++r) {
        const Config& x = s.state(r);
        index[std::vector<int>(x.data(), x.data() + x.size())] = r;
      }
      CHECK(index.size() == static_cast<std::size_t>(s.size()));
      for (std::int64_t r = 0; r < s.size(); ++r) {
        const Config& x = s.state(r);
        CHECK(s.rank(x) == r);
        CHECK(index[std::vector<int>(x.data(), x.data() + x.size())] == r);
      }
    }
}

TEST_CASE("rank input validation") {
  StateSpace s(3, 4);
  CHECK_THROWS(s.rank(make_config({1, 1})));        // wrong length
  CHECK_THROWS(s.rank(make_config({1, 1, 1})));     // wrong sum
  CHECK_THROWS(s.rank(make_config({5, -1, 0})));    // negative entry
}

TEST_CASE("one-step neighbors") {
  Graph k2 = complete_graph(2);
  auto nb = one_step_neighbors(make_config({2, 0}), k2);
  REQUIRE(nb.size() == 2);
  CHECK(nb[0].config == make_config({2, 0}));
  CHECK(nb[0].move.is_stay());
  CHECK(nb[1].config == make_config({1, 1}));
  CHECK(nb[1].move.from == 0);
  CHECK(nb[1].move.to == 1);

  Graph p3 = path_graph(3);
  auto nb2 = one_step_neighbors(make_config({0, 1, 0}), p3);
  std::set<std::vector<int>> seen;
  for (const auto& e : nb2)
    seen.insert(std::vector<int>(e.config.data(), e.config.data() + 3));
  CHECK(seen == std::set<std::vector<int>>{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});

  Graph k3 = complete_graph(3);
  auto nb3 = one_step_neighbors(make_config({1, 1, 0}), k3);
  std::set<std::vector<int>> distinct;
  for (const auto& e : nb3)
    distinct.insert(std::vector<int>(e.config.data(), e.config.data() + 3));
  CHECK(distinct.size() == 5);  // stay, 0->1, 0->2, 1->0, 1->2
}

TEST_CASE("neighbor structure properties") {
  Graph p3 = path_graph(3);
  StateSpace s(3, 3);
  for (std::int64_t r = 0; r < s.size(); ++r) {
    const Config& x = s.state(r);
    for (const auto& e : one_step_neighbors(x, p3)) {
      CHECK(e.config.sum() == 3);  // particle count conserved
      if (e.move.is_stay()) continue;
      // reverse move leads back
      bool found_reverse = false;
      for (const auto& back : one_step_neighbors(e.config, p3))
        if (!back.move.is_stay() && back.move.from == e.move.to &&
            back.move.to == e.move.from && back.config == x)
          found_reverse = true;
      CHECK(found_reverse);
    }
  }
}
