#pragma once

#include "kaehler.hpp"
#include "total.hpp"

namespace brst::coho {

struct DegreeDims {
  int z = 0;  // cocycles
  int b = 0;  // coboundaries
  int h = 0;  // cohomology
};

// Generic exact rank-nullity over a graded family of subspace bases: basis
// vectors per degree as columns in ambient coordinates, a differential matrix
// on the ambient space, and the degree step the differential takes.
// Requires (and checks) that the differential maps each graded piece into the
// span of the next one.
std::map<int, DegreeDims> cohomologyDims(
    const std::map<int, linalg::SparseMatrix>& basis_by_deg,
    const linalg::SparseMatrix& differential, int step);

// Relative anomalous cohomology of D_rel on A_rel, graded by gh_rel.
std::map<int, DegreeDims> relativeCohomology(const total::TotalComplex& tc,
                                             const total::RelativeData& rel);

struct HarmonicSpace {
  std::map<int, std::vector<linalg::SparseVec>> basis_by_deg;  // carrier coords
  std::map<std::pair<int, int>, int> dim_by_bidegree;

  int dimAt(int r) const;
  int dim() const;
  linalg::SparseMatrix basisMatrix(int ambient, int r) const;
};

// ker D_rel intersect ker D_rel^dagger inside each graded piece of A_rel,
// refined by bidegree.
HarmonicSpace harmonicSpace(const total::TotalComplex& tc, const kaehler::KaehlerStructure& ks,
                            const total::RelativeData& rel);

struct HomotopyReport {
  bool decomposed = false;       // Psi = Psi_0 + D_rel Phi with Psi_0 harmonic
  bool phi_in_complex = true;    // Phi found inside A_rel by construction
  linalg::SparseVec harmonic_part;
  linalg::SparseVec potential;   // Phi, in carrier coordinates
};

// Kähler-orthogonal projection onto the harmonic space plus an exact solve of
// D_rel Phi = Psi - Psi_0 inside the anomalous complex.
HomotopyReport contractingHomotopy(const total::TotalComplex& tc,
                                   const kaehler::KaehlerStructure& ks,
                                   const total::RelativeData& rel, const HarmonicSpace& harm,
                                   const linalg::SparseVec& cocycle_carrier, int degree);

struct ZeroDegreeReport {
  int root_dim = 0;            // bidegree (0,0) harmonic component
  int gb_dim = 0;              // dim V(g,chi)
  bool spans_match = false;    // root component == omega x V(g,chi)
  int higher_bidegree_dim = 0; // open-question probe, reported only
};

ZeroDegreeReport zeroDegreeRootComponent(const total::TotalComplex& tc,
                                         const kaehler::KaehlerStructure& ks,
                                         const total::RelativeData& rel,
                                         const HarmonicSpace& harm);

struct AbsoluteReport {
  total::Subspace space;                 // h-invariant sector
  std::map<int, DegreeDims> rows_by_2r;  // keyed by 2 gh_tot
  long total_cohomology = 0;
  bool vanishing_above_half_l = true;    // H^r = 0 for r > l/2
  bool matches_reconstruction = true;    // dim H^{-l/2+s} = C(l,s) dim F
  bool total_matches = true;             // total = 2^l dim F
};

// Direct rank-nullity of D on the h-invariant anomalous complex, compared
// against the binomial reconstruction out of the harmonic dimension.
AbsoluteReport absoluteCohomology(const total::TotalComplex& tc, int harmonic_dim);

// Same computation without the h-invariance restriction (consistency oracle
// for small instances).
std::map<int, DegreeDims> absoluteCohomologyUnrestricted(const total::TotalComplex& tc);

// d^nil-cohomology of the bare ghost module graded by exterior form degree;
// the classical Lie-algebra cohomology of g with trivial coefficients.
std::vector<int> classicalGhostCohomology(const roots::RootDatum& d);

}  // namespace brst::coho
