#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "rootsystem.hpp"

using namespace brst;
using namespace brst::roots;

namespace {

// Reflection-closure oracle: the full root system is the closure of the
// simple roots under all simple reflections s_i(b) = b - b(H_i) a_i.
std::set<std::vector<int>> reflectionClosure(const RootDatum& d) {
  std::set<std::vector<int>> roots;
  for (int i = 0; i < d.rank_l; ++i) {
    std::vector<int> e(d.rank_l, 0);
    e[i] = 1;
    roots.insert(e);
    e[i] = -1;
    roots.insert(e);
  }
  for (bool grew = true; grew;) {
    grew = false;
    auto snapshot = roots;
    for (const auto& b : snapshot) {
      for (int i = 0; i < d.rank_l; ++i) {
        int pairing = 0;
        for (int k = 0; k < d.rank_l; ++k) pairing += d.cartan[i][k] * b[k];
        std::vector<int> r = b;
        r[i] -= pairing;
        if (roots.insert(r).second) grew = true;
      }
    }
  }
  return roots;
}

std::set<std::vector<int>> positiveSet(const RootDatum& d) {
  return {d.positive_roots.begin(), d.positive_roots.end()};
}

}  // namespace

TEST_CASE("A1 root system") {
  auto d = buildRootSystem('A', 1);
  CHECK(d.num_positive == 1);
  CHECK(d.cartan == std::vector<std::vector<int>>{{2}});
  CHECK(d.n_table.empty());
  CHECK(d.dimension() == 3);
}

TEST_CASE("A2 root system matches reflection oracle") {
  auto d = buildRootSystem('A', 2);
  CHECK(d.num_positive == 3);
  auto oracle = reflectionClosure(d);
  std::set<std::vector<int>> pos;
  for (const auto& r : oracle) {
    if (std::accumulate(r.begin(), r.end(), 0) > 0) pos.insert(r);
  }
  CHECK(pos == positiveSet(d));
  CHECK(d.positive_roots.back() == std::vector<int>{1, 1});
  // |N_{a1,a2}| = 1 since a2 - a1 is not a root
  CHECK(abs(d.n(1, 2)) == Rational(1));
}

TEST_CASE("G2 root system") {
  auto d = buildRootSystem('G', 2);
  CHECK(d.num_positive == 6);
  CHECK(d.height(6) == 5);  // highest root
  auto oracle = reflectionClosure(d);
  CHECK(oracle.size() == 12);
  std::set<std::vector<int>> pos;
  for (const auto& r : oracle) {
    if (std::accumulate(r.begin(), r.end(), 0) > 0) pos.insert(r);
  }
  CHECK(pos == positiveSet(d));
  // Chevalley constants of G2 reach |N| = 2 and 3
  std::set<long> magnitudes;
  for (const auto& [k, v] : d.n_table) magnitudes.insert(std::abs(v.get_num().get_si()));
  CHECK(magnitudes.count(1) == 1);
  CHECK(magnitudes.count(2) == 1);
  CHECK(magnitudes.count(3) == 1);
}

TEST_CASE("other supported types build and pass the Jacobi gate") {
  for (auto [t, l] : {std::pair<char, int>{'A', 3}, {'A', 4}, {'B', 2}, {'B', 3},
                      {'C', 3}, {'D', 4}, {'F', 4}}) {
    auto d = buildRootSystem(t, l);
    CHECK(d.num_positive > 0);
  }
  CHECK_THROWS(buildRootSystem('E', 6));
  CHECK_THROWS(buildRootSystem('A', 9));
  CHECK_THROWS(buildRootSystem('G', 3));
}

TEST_CASE("B2 has 4 positive roots") {
  auto d = buildRootSystem('B', 2);
  CHECK(d.num_positive == 4);
  CHECK(d.height(4) == 3);
}

TEST_CASE("Chevalley table invariants") {
  for (auto [t, l] : {std::pair<char, int>{'A', 2}, {'A', 3}, {'B', 2}, {'C', 3}, {'G', 2}}) {
    auto d = buildRootSystem(t, l);
    for (int a = -d.num_positive; a <= d.num_positive; ++a) {
      if (a == 0) continue;
      for (int b = -d.num_positive; b <= d.num_positive; ++b) {
        if (b == 0) continue;
        // zero iff a+b not a root
        if (d.sum(a, b) == 0) {
          CHECK(isZero(d.n(a, b)));
        } else {
          CHECK(!isZero(d.n(a, b)));
          CHECK(d.n(a, b) == -d.n(b, a));
          CHECK(d.n(-a, -b) == d.n(a, b));           // tau-basis reality
          CHECK(d.nCarter(-a, -b) == -d.nCarter(a, b));  // e/f convention underneath
        }
      }
    }
  }
}

TEST_CASE("rho has unit coordinates and equals half sum of positive roots") {
  for (auto [t, l] : {std::pair<char, int>{'A', 1}, {'A', 2}, {'G', 2}, {'B', 2}}) {
    auto d = buildRootSystem(t, l);
    auto p = rho(d);
    for (const auto& c : p.coords) CHECK(c == Rational(1));
    Weight half;
    half.coords.assign(d.rank_l, Rational(0));
    for (int k = 1; k <= d.num_positive; ++k) half = half + d.rootWeight(k);
    for (int i = 0; i < d.rank_l; ++i) CHECK(half.coords[i] == Rational(2) * p.coords[i]);
  }
}

TEST_CASE("anomaly coefficients") {
  auto a1 = buildRootSystem('A', 1);
  Weight chi1{{rat(2)}};
  auto r1 = anomalyCoefficients(a1, chi1);
  CHECK(r1.of(1) == rat(4));
  CHECK(r1.of(-1) == rat(4));

  auto a2 = buildRootSystem('A', 2);
  Weight chi2{{rat(1), rat(1)}};
  auto r2 = anomalyCoefficients(a2, chi2);
  CHECK(r2.of(1) == rat(3));
  CHECK(r2.of(2) == rat(3));
  CHECK(r2.of(3) == rat(6));  // highest root a1+a2

  Weight wall{{rat(0)}};
  CHECK_THROWS(anomalyCoefficients(a1, wall));
  Weight neg{{rat(1), rat(-1)}};
  CHECK_THROWS(anomalyCoefficients(a2, neg));
  // dominant chi on a chamber wall is admissible: chi + 2 rho is regular
  Weight wall2{{rat(1), rat(0)}};
  auto rw = anomalyCoefficients(a2, wall2);
  for (int k = 1; k <= a2.num_positive; ++k) CHECK(sgn(rw.of(k)) > 0);
}

TEST_CASE("cocycle identity over zero-sum triples") {
  for (auto [t, l] : {std::pair<char, int>{'A', 2}, {'B', 2}, {'G', 2}}) {
    auto d = buildRootSystem(t, l);
    Weight chi;
    chi.coords.assign(l, rat(1));
    auto r = anomalyCoefficients(d, chi);
    CHECK(verifyCocycleIdentity(d, r));
  }
}

TEST_CASE("root datum json serialization") {
  auto d = buildRootSystem('A', 2);
  auto j = d.toJson();
  CHECK(j.find("\"positive_roots\"") != std::string::npos);
  CHECK(j.find("\"n_table\"") != std::string::npos);
}
