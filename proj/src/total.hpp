#pragma once

#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "ghost.hpp"
#include "weightmodule.hpp"

namespace brst::total {

// An enumerated subspace of the combined (ghost state) x (V basis) index
// space, with positions for matrix materialization.
struct Subspace {
  std::vector<long> idx;
  std::unordered_map<long, int> pos;

  int dim() const { return static_cast<int>(idx.size()); }
  void push(long i) {
    pos.emplace(i, static_cast<int>(idx.size()));
    idx.push_back(i);
  }
  bool contains(long i) const { return pos.count(i) > 0; }
};

// The assembled total differential space C(V) for one (algebra, lambda, chi)
// instance, together with every operator the verification suite touches.
struct TotalComplex {
  const roots::RootDatum* datum = nullptr;
  const rep::WeightModule* module = nullptr;
  roots::Weight chi;
  roots::AnomalyCoefficients r;
  ghost::GhostSector gh;
  rep::ConstraintOperators constraints;

  std::vector<linalg::SparseMatrix> matter;
  std::map<roots::RootIdx, int> matter_root_id;  // id of L_a in the matter table
  std::vector<int> matter_cartan_id;             // id of L_{H_i}

  ghost::GhostOp D;
  std::map<roots::RootIdx, ghost::GhostOp> l_tot_root;
  std::vector<ghost::GhostOp> l_tot_cartan;
  std::vector<ghost::GhostOp> m_op;  // M^i = {D, c^i}
  ghost::GhostOp j_plus, j_minus;    // pure ghost
  ghost::GhostOp d_rel;
  ghost::GhostOp d_bar;     // bidegree (1,0) piece of d_rel
  ghost::GhostOp d_script;  // bidegree (0,-1) piece
  ghost::GhostOp d_c;       // d_script - d_bar
  // pure ghost pieces of the split differentials
  ghost::GhostOp del_bar, del;                       // canonical n_+ / n_- differentials
  std::map<roots::RootIdx, ghost::GhostOp> t_cross;  // t_{+a}, t_{-a}

  int dimV = 0;
  long dimTotal() const { return gh.space.numStates() * dimV; }
  long index(ghost::State s, int v) const { return static_cast<long>(s) * dimV + v; }
  ghost::State stateOf(long i) const { return static_cast<ghost::State>(i / dimV); }
  int vOf(long i) const { return static_cast<int>(i % dimV); }

  Rational ghTotEigen(long i) const { return gh.ghTotEigen(stateOf(i)); }
  int ghRelEigen(long i) const { return gh.ghRelEigen(stateOf(i)); }
  int ghBarEigen(long i) const { return gh.ghBarEigen(stateOf(i)); }
  int ghEigen(long i) const { return gh.ghEigen(stateOf(i)); }
  // total h-weight: ghost weight plus (matter weight - chi)
  roots::Weight totalWeight(long i) const;
  bool weightZero(long i) const;

  linalg::SparseVec apply(const ghost::GhostOp& op, long basis_index) const;
  linalg::SparseVec apply(const ghost::GhostOp& op, const linalg::SparseVec& v) const;

  // subspaces
  Subspace fullSpace() const;
  Subspace relativeSector() const;    // b_i-killed, no Cartan ghosts (all weights)
  Subspace relativeSpace() const;     // ... and L^tot_H = 0: the C_rel(V) of the paper
  Subspace hInvariantSpace() const;   // L^tot_H = 0, Cartan ghosts allowed
  Subspace polarizedSpace() const;    // annihilated by all c^a, a > 0

  // materialize an operator on a subspace; returns false in *stays if any
  // image leaves the subspace (leaked entries are dropped from the matrix)
  linalg::SparseMatrix materialize(const ghost::GhostOp& op, const Subspace& s,
                                   bool* stays = nullptr) const;
};

TotalComplex buildTotalComplex(const roots::RootDatum& d, const rep::WeightModule& m,
                               const roots::Weight& chi);

// Anomalous complex data. Since the curvature is a pure ghost operator,
// ker D^2 = (ker J^+ in C) tensor V; the ghost kernel is computed per
// (gh_tot, ghost weight) slice.
struct AnomalousData {
  // basis of ker J^+ inside the ghost module, grouped by gh_tot eigenvalue
  // (stored as twice the eigenvalue to stay integral)
  std::map<int, linalg::SubspaceBasis> ghost_kernel_by_2r;
  std::map<int, long> dim_by_2r;  // dims of A^r = ghost kernel x V
  int dimV = 0;

  long totalDim() const;
};

AnomalousData anomalousSubspace(const TotalComplex& tc);

// Relative complex: basis of A_rel = ker J^+ inside the weight-zero
// Cartan-ghost-free sector, graded by gh_rel (already shifted so the vacuum
// sits at degree zero).
struct RelativeData {
  Subspace carrier;  // C_rel(V)
  std::map<int, std::vector<linalg::SparseVec>> basis_by_deg;  // vectors in carrier coords
  std::map<std::pair<int, int>, int> dim_by_bidegree;          // (p, q) -> dim

  int dim() const;
  int dimAt(int r) const;
  linalg::SparseMatrix basisMatrix(int r) const;
};

RelativeData relativeSubspace(const TotalComplex& tc);

// Ghost-anti-ghost cluster generators of weight zero.
ghost::GhostOp clusterG(const TotalComplex& tc, int a);
ghost::GhostOp clusterG2(const TotalComplex& tc, int a, int b);
// dimension of the subalgebra closure of the cluster + ghost creators applied
// to the vacuum, inside ker J^+ of the ghost module (open-question probe)
long clusterGeneratedDim(const TotalComplex& tc);

}  // namespace brst::total
