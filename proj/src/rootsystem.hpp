#pragma once

#include <map>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace brst::roots {

// A weight given by its values <lambda, H_i> on the fixed Cartan basis.
struct Weight {
  std::vector<Rational> coords;

  int rank() const { return static_cast<int>(coords.size()); }
  bool operator==(const Weight& o) const { return coords == o.coords; }
  bool operator<(const Weight& o) const { return coords < o.coords; }
  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
};

// Roots are indexed by signed integers: +k / -k is the k-th positive /
// negative root, k = 1..m in the fixed (height, then lex) order.
using RootIdx = int;

struct RootDatum {
  char algebra_type = 'A';
  int rank_l = 0;
  int num_positive = 0;  // m

  // positive roots as integer coefficient vectors over the simple roots,
  // index k-1 holds root +k
  std::vector<std::vector<int>> positive_roots;
  // cartan[i][j] = <alpha_j, H_i>
  std::vector<std::vector<int>> cartan;
  // symmetrizers: (alpha_i, alpha_j) = d_i * cartan[i][j]
  std::vector<int> sym_d;
  // coroot coordinates: H_{+k} = sum_i coroot[k-1][i] H_i
  std::vector<std::vector<int>> coroots;
  // Chevalley constants in the tau basis ([tau_a, tau_b] = N tau_{a+b} - delta H_a),
  // keyed by signed root pairs; zero entries absent.
  std::map<std::pair<RootIdx, RootIdx>, Rational> n_table;
  // Carter-basis constants (e/f convention) the tau table is twisted from.
  std::map<std::pair<RootIdx, RootIdx>, Rational> n_table_carter;

  int dimension() const { return 2 * num_positive + rank_l; }
  int height(RootIdx a) const;
  // coefficient vector of a signed root
  std::vector<int> rootVec(RootIdx a) const;
  // signed index of the root with the given coefficient vector, 0 if not a root
  RootIdx indexOf(const std::vector<int>& v) const;
  RootIdx sum(RootIdx a, RootIdx b) const;  // 0 if a+b is not a root
  bool isRoot(const std::vector<int>& v) const;

  // inner products from the symmetrized Cartan matrix
  Rational bilinear(const std::vector<int>& a, const std::vector<int>& b) const;
  Rational length2(RootIdx a) const;

  // <lambda, H_a> for a signed root index
  Rational pair(const Weight& lambda, RootIdx a) const;
  // alpha(H_i) for signed root alpha
  Rational rootOnCartan(RootIdx a, int i) const;
  // value of the Chevalley constant, zero when a+b is not a root
  Rational n(RootIdx a, RootIdx b) const;
  Rational nCarter(RootIdx a, RootIdx b) const;

  Weight simpleRootWeight(int i) const;  // alpha_i as a Weight
  Weight rootWeight(RootIdx a) const;

  std::string typeName() const;
  std::string toJson() const;
};

struct AnomalyCoefficients {
  // r[k-1] = r_{+k} = r_{-k}
  std::vector<Rational> r;
  Rational of(RootIdx a) const { return r[std::abs(a) - 1]; }
};

RootDatum buildRootSystem(char type, int rank);
Weight rho(const RootDatum& d);
bool isRegularDominant(const RootDatum& d, const Weight& chi);
bool isDominantIntegral(const RootDatum& d, const Weight& lam);
// Admissible anomaly weight: dominant and nonzero. chi + 2 rho is then
// strictly inside the Weyl chamber and every r_a comes out positive, which is
// all the anomalous machinery relies on.
bool isAdmissibleChi(const RootDatum& d, const Weight& chi);
AnomalyCoefficients anomalyCoefficients(const RootDatum& d, const Weight& chi);

// Exhaustive Jacobi check over the full bracket table (tau_a, H_i basis).
// Throws on failure; called by buildRootSystem.
void verifyJacobi(const RootDatum& d);

// Cocycle identity of the anomaly coefficients over all zero-sum root
// triples alpha + beta + gamma = 0:
//   sign(a+b) r_{a+b} N_{ab} = sign(a+c) r_{a+c} N_{ac} - sign(b+c) r_{b+c} N_{bc}.
bool verifyCocycleIdentity(const RootDatum& d, const AnomalyCoefficients& r);

}  // namespace brst::roots
