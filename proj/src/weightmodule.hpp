#pragma once

#include <map>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "rootsystem.hpp"

namespace brst::rep {

// Finite-dimensional highest-weight module V(lambda) with exact rational
// action matrices in a weight basis and the Shapovalov Gram matrix.
struct WeightModule {
  const roots::RootDatum* datum = nullptr;
  roots::Weight highest_weight;
  int dim = 0;
  std::vector<roots::Weight> weights;  // weight of each basis vector
  linalg::SparseMatrix gram;

  // tau_a action for every signed root a, plus the Cartan basis action
  std::map<roots::RootIdx, linalg::SparseMatrix> tau;
  std::vector<linalg::SparseMatrix> cartan_h;

  const linalg::SparseMatrix& action(roots::RootIdx a) const { return tau.at(a); }
  linalg::SparseMatrix actionCoroot(roots::RootIdx a) const;  // H_a
  std::vector<int> weightSpace(const roots::Weight& w) const;
  std::string toJson(bool include_matrices) const;
};

Integer weylDimension(const roots::RootDatum& d, const roots::Weight& lambda);
WeightModule buildIrrep(const roots::RootDatum& d, const roots::Weight& lambda);

// Bracket fidelity, conjugation rules against the Gram matrix, Gram
// positivity, Weyl dimension. Throws on any failure.
void verifyModule(const WeightModule& m);

// Shifted constraint operators L_x = Ltilde_x - <chi, x>; the shift touches
// only Cartan directions.
struct ConstraintOperators {
  const WeightModule* module = nullptr;
  roots::Weight chi;
  std::map<roots::RootIdx, linalg::SparseMatrix> l_root;
  std::vector<linalg::SparseMatrix> l_cartan;

  const linalg::SparseMatrix& root(roots::RootIdx a) const { return l_root.at(a); }
  linalg::SparseMatrix coroot(roots::RootIdx a) const;  // L_{H_a} (shifted)
};

// test-only bypass of the chi regularity precondition: allow_any_chi
ConstraintOperators shiftedConstraints(const WeightModule& m, const roots::Weight& chi,
                                       bool allow_any_chi = false);

// Bracket table of Eq-style anomalous commutators; throws on failure.
void verifyConstraintAlgebra(const ConstraintOperators& ops);

// {phi : L_a phi = 0 for a > 0, L_H phi = 0} — the weight-chi highest-weight line(s).
linalg::SubspaceBasis guptaBleulerKernel(const ConstraintOperators& ops);

}  // namespace brst::rep
