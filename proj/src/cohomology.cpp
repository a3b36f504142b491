#include "cohomology.hpp"

#include <stdexcept>

namespace brst::coho {

using kaehler::KaehlerStructure;
using linalg::SparseMatrix;
using linalg::SparseVec;
using total::RelativeData;
using total::TotalComplex;

std::map<int, DegreeDims> cohomologyDims(const std::map<int, SparseMatrix>& basis_by_deg,
                                         const SparseMatrix& differential, int step) {
  std::map<int, int> image_rank;  // rank of D restricted to each degree
  for (const auto& [r, basis] : basis_by_deg) {
    SparseMatrix img = linalg::mul(differential, basis);
    int rk = linalg::rank(img);
    image_rank[r] = rk;
    if (rk > 0) {
      auto next = basis_by_deg.find(r + step);
      if (next == basis_by_deg.end()) {
        throw std::runtime_error("cohomologyDims: differential leaves the graded family");
      }
      if (linalg::rank(linalg::hcat(next->second, img)) != next->second.cols) {
        throw std::runtime_error("cohomologyDims: differential image escapes the next piece");
      }
    }
  }
  std::map<int, DegreeDims> out;
  for (const auto& [r, basis] : basis_by_deg) {
    DegreeDims d;
    d.z = basis.cols - image_rank.at(r);
    auto prev = image_rank.find(r - step);
    d.b = prev == image_rank.end() ? 0 : prev->second;
    d.h = d.z - d.b;
    if (d.h < 0) throw std::runtime_error("cohomologyDims: negative cohomology dimension");
    out[r] = d;
  }
  return out;
}

std::map<int, DegreeDims> relativeCohomology(const TotalComplex& tc, const RelativeData& rel) {
  bool stays = true;
  SparseMatrix drel = tc.materialize(tc.d_rel, rel.carrier, &stays);
  if (!stays) throw std::runtime_error("relativeCohomology: D_rel leaves the carrier");
  std::map<int, SparseMatrix> basis;
  for (const auto& [r, vecs] : rel.basis_by_deg) {
    basis[r] = SparseMatrix::fromColumns(rel.carrier.dim(), vecs);
  }
  return cohomologyDims(basis, drel, 1);
}

int HarmonicSpace::dimAt(int r) const {
  auto it = basis_by_deg.find(r);
  return it == basis_by_deg.end() ? 0 : static_cast<int>(it->second.size());
}

int HarmonicSpace::dim() const {
  int t = 0;
  for (const auto& [r, b] : basis_by_deg) t += static_cast<int>(b.size());
  return t;
}

SparseMatrix HarmonicSpace::basisMatrix(int ambient, int r) const {
  auto it = basis_by_deg.find(r);
  std::vector<SparseVec> cols;
  if (it != basis_by_deg.end()) cols = it->second;
  return SparseMatrix::fromColumns(ambient, cols);
}

HarmonicSpace harmonicSpace(const TotalComplex& tc, const KaehlerStructure& ks,
                            const RelativeData& rel) {
  bool stays = true;
  SparseMatrix drel = tc.materialize(tc.d_rel, rel.carrier, &stays);
  SparseMatrix drel_dag = ks.restrictToRelative(ks.d_rel_dag);
  HarmonicSpace out;
  // the Laplacian has bidegree (0,0), so the harmonic space splits over the
  // bidegrees of A_rel; compute it slice by slice
  std::map<std::pair<int, int>, std::vector<SparseVec>> slices;
  for (const auto& [r, basis] : rel.basis_by_deg) {
    for (const auto& v : basis) {
      long rep = rel.carrier.idx[v.e.front().first];
      slices[{tc.ghBarEigen(rep), tc.ghEigen(rep)}].push_back(v);
    }
  }
  for (const auto& [pq, vecs] : slices) {
    SparseMatrix basis = SparseMatrix::fromColumns(rel.carrier.dim(), vecs);
    SparseMatrix stacked = linalg::vcat(linalg::mul(drel, basis), linalg::mul(drel_dag, basis));
    auto ker = linalg::nullspace(stacked);
    if (ker.dim() == 0) continue;
    out.dim_by_bidegree[pq] = ker.dim();
    int r = pq.first - pq.second;
    for (const auto& coef : ker.vecs) {
      out.basis_by_deg[r].push_back(linalg::mul(basis, coef));
    }
  }
  return out;
}

HomotopyReport contractingHomotopy(const TotalComplex& tc, const KaehlerStructure& ks,
                                   const RelativeData& rel, const HarmonicSpace& harm,
                                   const SparseVec& cocycle, int degree) {
  HomotopyReport rep;
  bool stays = true;
  SparseMatrix drel = tc.materialize(tc.d_rel, rel.carrier, &stays);
  SparseMatrix gram = ks.restrictToRelative(ks.gram);

  // verify the input really is a cocycle
  if (!linalg::mul(drel, cocycle).empty()) {
    throw std::runtime_error("contractingHomotopy: input is not a cocycle");
  }

  // Kähler-orthogonal projection onto the harmonic space
  SparseMatrix f = harm.basisMatrix(rel.carrier.dim(), degree);
  SparseVec psi0;
  if (f.cols > 0) {
    SparseMatrix ftk = linalg::mul(f.transpose(), gram);
    SparseMatrix normal = linalg::mul(ftk, f);
    SparseVec rhs = linalg::mul(ftk, cocycle);
    auto x = linalg::solve(normal, rhs);
    if (!x) throw std::runtime_error("contractingHomotopy: projection solve failed");
    psi0 = linalg::mul(f, *x);
  }
  rep.harmonic_part = psi0;

  SparseVec rest = cocycle;
  rest.axpy(Rational(-1), psi0);
  if (rest.empty()) {
    rep.decomposed = true;
    return rep;
  }
  SparseMatrix below = rel.basisMatrix(degree - 1);
  if (below.cols == 0) return rep;  // nothing to solve against: a finding
  auto y = linalg::solve(linalg::mul(drel, below), rest);
  if (!y) return rep;  // violates the contracting-homotopy statement
  rep.potential = linalg::mul(below, *y);
  rep.decomposed = true;
  return rep;
}

ZeroDegreeReport zeroDegreeRootComponent(const TotalComplex& tc, const KaehlerStructure& ks,
                                         const RelativeData& rel, const HarmonicSpace& harm) {
  ZeroDegreeReport out;
  auto it = harm.dim_by_bidegree.find({0, 0});
  out.root_dim = it == harm.dim_by_bidegree.end() ? 0 : it->second;
  out.higher_bidegree_dim = harm.dimAt(0) - out.root_dim;

  auto gb = rep::guptaBleulerKernel(tc.constraints);
  out.gb_dim = gb.dim();

  // root component basis: harmonic vectors supported on bidegree (0,0)
  std::vector<SparseVec> root_vecs;
  auto deg0 = harm.basis_by_deg.find(0);
  if (deg0 != harm.basis_by_deg.end()) {
    for (const auto& v : deg0->second) {
      long rep0 = rel.carrier.idx[v.e.front().first];
      if (tc.ghBarEigen(rep0) == 0 && tc.ghEigen(rep0) == 0) root_vecs.push_back(v);
    }
  }
  // omega x V(g,chi) in carrier coordinates
  std::vector<SparseVec> gb_vecs;
  const auto& sp = tc.gh.space;
  for (const auto& v : gb.vecs) {
    SparseVec lifted;
    bool inside = true;
    for (const auto& [u, c] : v.e) {
      long i = tc.index(sp.vacuum(), u);
      auto pos = rel.carrier.pos.find(i);
      if (pos == rel.carrier.pos.end()) {
        inside = false;
        break;
      }
      lifted.set(pos->second, c);
    }
    if (inside) gb_vecs.push_back(std::move(lifted));
  }
  if (static_cast<int>(gb_vecs.size()) != out.gb_dim) {
    // a Gupta-Bleuler vector of the wrong weight cannot sit in the carrier
    out.spans_match = (out.root_dim == 0);
    return out;
  }
  SparseMatrix a = SparseMatrix::fromColumns(rel.carrier.dim(), root_vecs);
  SparseMatrix b = SparseMatrix::fromColumns(rel.carrier.dim(), gb_vecs);
  out.spans_match = linalg::sameSpan(a, b);
  return out;
}

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
  return r;
}

// basis of ker J^+ inside an arbitrary weight-homogeneous subspace, grouped
// by twice the gh_tot eigenvalue
std::map<int, std::vector<SparseVec>> anomalousWithin(const TotalComplex& tc,
                                                      const total::Subspace& space) {
  bool stays = true;
  SparseMatrix jp = tc.materialize(tc.j_plus, space, &stays);
  if (!stays) throw std::runtime_error("anomalousWithin: J+ leaves the subspace");
  std::map<int, std::vector<int>> groups;
  for (int j = 0; j < space.dim(); ++j) {
    Rational two_r = tc.ghTotEigen(space.idx[j]) * 2;
    groups[static_cast<int>(two_r.get_num().get_si())].push_back(j);
  }
  std::map<int, std::vector<SparseVec>> out;
  for (const auto& [two_r, positions] : groups) {
    SparseMatrix cols(space.dim(), static_cast<int>(positions.size()));
    for (size_t k = 0; k < positions.size(); ++k) cols.col[k] = jp.col[positions[k]];
    auto ker = linalg::nullspace(cols);
    for (const auto& v : ker.vecs) {
      SparseVec lifted;
      for (const auto& [k, c] : v.e) lifted.set(positions[k], c);
      out[two_r].push_back(std::move(lifted));
    }
  }
  return out;
}

std::map<int, DegreeDims> absoluteDims(const TotalComplex& tc, const total::Subspace& space) {
  auto anom = anomalousWithin(tc, space);
  bool stays = true;
  SparseMatrix dmat = tc.materialize(tc.D, space, &stays);
  if (!stays) throw std::runtime_error("absoluteDims: D leaves the subspace");
  std::map<int, SparseMatrix> basis;
  for (const auto& [two_r, vecs] : anom) {
    basis[two_r] = SparseMatrix::fromColumns(space.dim(), vecs);
  }
  return cohomologyDims(basis, dmat, 2);
}

}  // namespace

AbsoluteReport absoluteCohomology(const TotalComplex& tc, int harmonic_dim) {
  AbsoluteReport out;
  out.space = tc.hInvariantSpace();
  out.rows_by_2r = absoluteDims(tc, out.space);
  int l = tc.datum->rank_l;
  for (const auto& [two_r, dims] : out.rows_by_2r) {
    out.total_cohomology += dims.h;
    if (two_r > l && dims.h != 0) out.vanishing_above_half_l = false;
  }
  for (int s = 0; s <= l; ++s) {
    int two_r = -l + 2 * s;
    auto it = out.rows_by_2r.find(two_r);
    int got = it == out.rows_by_2r.end() ? 0 : it->second.h;
    if (got != binomial(l, s) * harmonic_dim) out.matches_reconstruction = false;
  }
  out.total_matches = (out.total_cohomology == (1L << l) * harmonic_dim);
  return out;
}

std::map<int, DegreeDims> absoluteCohomologyUnrestricted(const TotalComplex& tc) {
  return absoluteDims(tc, tc.fullSpace());
}

std::vector<int> classicalGhostCohomology(const roots::RootDatum& d) {
  auto gs = ghost::buildGhostSector(d);
  const auto& sp = gs.space;
  SparseMatrix dn = ghost::materializePure(sp, gs.d_nil);
  // exterior form degree: Cartan and c-type factors count +1, every missing
  // b-type factor means a surviving negative-root form
  std::map<int, SparseMatrix> basis;
  std::map<int, std::vector<SparseVec>> cols;
  for (long g = 0; g < sp.numStates(); ++g) {
    ghost::State s = static_cast<ghost::State>(g);
    int deg = sp.hCount(s) + sp.cCount(s) + (sp.m - sp.bCount(s));
    cols[deg].push_back(linalg::unitVec(static_cast<int>(g)));
  }
  for (const auto& [deg, vecs] : cols) {
    basis[deg] = SparseMatrix::fromColumns(static_cast<int>(sp.numStates()), vecs);
  }
  auto dims = cohomologyDims(basis, dn, 1);
  std::vector<int> out(d.dimension() + 1, 0);
  for (const auto& [deg, dd] : dims) out[deg] = dd.h;
  return out;
}

}  // namespace brst::coho
