#include <doctest.h>

#include <random>

#include "core/errors.hpp"
#include "core/fock.hpp"

using namespace qforge;

TEST_CASE("configuration/occupation conversion") {
  PhotonConfiguration config({0, 1, 1, 4}, 6);
  CHECK(to_occupation(config).counts == std::vector<int>{1, 2, 0, 0, 1, 0});

  CHECK(to_occupation(PhotonConfiguration({}, 3)).counts == std::vector<int>{0, 0, 0});
  CHECK(to_configuration(ModeOccupation{2, 0}).modes == std::vector<int>{0, 0});

  CHECK_THROWS_AS(PhotonConfiguration({3}, 3), std::invalid_argument);
}

TEST_CASE("conversion round-trips on random inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + static_cast<int>(rng() % 12);
    int n = static_cast<int>(rng() % 10);
    std::vector<int> modes(n);
    for (auto& x : modes) x = static_cast<int>(rng() % m);
    PhotonConfiguration config(modes, m);
    CHECK(to_configuration(to_occupation(config)) == config);
  }
}

TEST_CASE("enumerate_outputs counts and order") {
  auto outputs = enumerate_outputs(2, 2);
  REQUIRE(outputs.size() == 3);
  CHECK(outputs[0].modes == std::vector<int>{0, 0});
  CHECK(outputs[1].modes == std::vector<int>{0, 1});
  CHECK(outputs[2].modes == std::vector<int>{1, 1});

  CHECK(enumerate_outputs(1, 4).size() == 4);
  CHECK(enumerate_outputs(5, 5).size() == 126);

  for (int n = 0; n <= 4; ++n)
    for (int m = 1; m <= 5; ++m)
      CHECK(BigInt(enumerate_outputs(n, m).size()) == binomial(n + m - 1, n));

  CHECK_THROWS_AS(enumerate_outputs(30, 30, 1000), TooLargeError);
}

TEST_CASE("count_constrained_multisets") {
  CHECK(count_constrained_multisets({0}, 22, 25, 0) == 1);
  CHECK(count_constrained_multisets({1, 2}, 2, 3, 0) == 1);

  // residue-summed total equals the unconstrained multiset count
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 2 + static_cast<int>(rng() % 10);
    int n = static_cast<int>(rng() % 8);
    std::vector<int> allowed;
    for (int v = 0; v < m; ++v)
      if (rng() % 2) allowed.push_back(v);
    if (allowed.empty()) allowed.push_back(0);
    BigInt total = 0;
    for (int r = 0; r < m; ++r) total += count_constrained_multisets(allowed, n, m, r);
    CHECK(total == binomial(allowed.size() + n - 1, n));
  }
}

TEST_CASE("heralding pattern count for the 25-mode three-qutrit scheme") {
  std::vector<int> herald_modes{0, 6, 7, 8, 10, 11, 12, 14, 15, 17, 18, 19, 20, 21, 23, 24};
  BigInt count = count_constrained_multisets(herald_modes, 22, 25, 0);
  CHECK(count > 10'000'000);
}
