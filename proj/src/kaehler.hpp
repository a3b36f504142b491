#pragma once

#include "total.hpp"

namespace brst::kaehler {

// Hodge star, Kähler inner product and the Laplace operators, all living on
// the Cartan-ghost-free sector (the natural domain of the star operation);
// the weight-zero relative space C_rel(V) is carved out inside it.
struct KaehlerStructure {
  const total::TotalComplex* tc = nullptr;
  total::Subspace sector;    // b_i-killed, no Cartan ghosts, all weights
  total::Subspace relative;  // ... and L^tot_H = 0
  std::vector<int> rel_pos;  // sector position of each relative basis vector

  linalg::SparseMatrix star;
  linalg::SparseMatrix gram;      // block diagonal: ghost weights x Shapovalov
  linalg::SparseMatrix gram_inv;

  // materialized differentials and gradings on the sector
  linalg::SparseMatrix d_rel, d_bar, d_script, d_c;
  linalg::SparseMatrix j_plus, j_minus, gh_rel, gh_bar, gh, deg;
  linalg::SparseMatrix d_rel_dag, d_bar_dag, d_script_dag, d_c_dag;
  linalg::SparseMatrix lap, lap_c, box, box_bar;

  // Gram adjoint
  linalg::SparseMatrix dagger(const linalg::SparseMatrix& op) const;
  Rational inner(const linalg::SparseVec& a, const linalg::SparseVec& b) const;
  // restriction of a weight-preserving sector operator to C_rel(V); throws if
  // the operator does not vanish between the relative block and the rest
  linalg::SparseMatrix restrictToRelative(const linalg::SparseMatrix& op) const;
};

KaehlerStructure buildKaehler(const total::TotalComplex& tc);

// The operator family behind the conjectured form of the Laplacians.
struct AppendixBFamily {
  // pure ghost operators keyed by signed root index
  std::map<roots::RootIdx, ghost::GhostOp> gamma_op;  // Gamma_{+-a}
  std::map<roots::RootIdx, ghost::GhostOp> theta_op;  // Theta_{+-a}
  std::map<roots::RootIdx, ghost::GhostOp> ltilde;    // Ltilde_{+-a}
  std::map<roots::RootIdx, ghost::GhostOp> dcal;      // Dcal_{+-a}
  std::map<roots::RootIdx, ghost::GhostOp> d_full;    // D_a = Dcal_a + L_a (with matter)
  std::map<int, ghost::GhostOp> upsilon;              // Upsilon_a, a > 0
  ghost::GhostOp dcal_gh, dbar_gh;                    // ghost parts of the split differentials
  linalg::SparseMatrix kop;                           // K = -sum (1/r_a) D_{-a} D_{+a} on the sector
};

AppendixBFamily buildAppendixB(const total::TotalComplex& tc, const KaehlerStructure& ks);

// Conjecture probe: the residual Box - gh - K, assembled from the Gram-adjoint
// Laplacian (route a) and from the commutator expression of the appendix
// (route b), compared and ranked on the weight-zero relative space.
struct ConjectureResult {
  bool assemblies_agree = false;
  int residual_rank = 0;
  int relative_dim = 0;
  linalg::SparseVec witness;        // relative coordinates, empty if rank 0
  linalg::SparseVec witness_image;  // residual applied to the witness
};

ConjectureResult conjectureResidual(const total::TotalComplex& tc, const KaehlerStructure& ks,
                                    const AppendixBFamily& ab);

// residual assembled from Upsilon/Gamma commutators (route b), as a matrix on
// the sector
linalg::SparseMatrix residualFormula(const total::TotalComplex& tc, const KaehlerStructure& ks,
                                     const AppendixBFamily& ab);

}  // namespace brst::kaehler
