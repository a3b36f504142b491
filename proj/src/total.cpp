#include "total.hpp"

#include <algorithm>
#include <stdexcept>

namespace brst::total {

using ghost::Gen;
using ghost::GhostOp;
using ghost::State;
using linalg::SparseMatrix;
using linalg::SparseVec;
using roots::RootDatum;
using roots::RootIdx;

roots::Weight TotalComplex::totalWeight(long i) const {
  roots::Weight w = gh.ghostWeight(stateOf(i)) + module->weights[vOf(i)];
  return w - chi;
}

bool TotalComplex::weightZero(long i) const {
  roots::Weight w = totalWeight(i);
  return std::all_of(w.coords.begin(), w.coords.end(),
                     [](const Rational& x) { return isZero(x); });
}

SparseVec TotalComplex::apply(const GhostOp& op, long basis_index) const {
  State s0 = stateOf(basis_index);
  int v0 = vOf(basis_index);
  SparseVec out;
  for (const auto& t : op.terms) {
    State cur = s0;
    int sign = 1;
    bool dead = false;
    for (auto it = t.gens.rbegin(); it != t.gens.rend(); ++it) {
      ghost::Applied a = ghost::cliffordApply(gh.space, *it, cur);
      if (a.sign == 0) {
        dead = true;
        break;
      }
      cur = a.state;
      sign *= a.sign;
    }
    if (dead) continue;
    Rational c = t.coeff * sign;
    if (t.matter < 0) {
      long i = index(cur, v0);
      out.set(i, out.get(i) + c);
    } else {
      for (const auto& [v1, mv] : matter[t.matter].col[v0].e) {
        long i = index(cur, v1);
        out.set(i, out.get(i) + c * mv);
      }
    }
  }
  std::erase_if(out.e, [](const auto& p) { return isZero(p.second); });
  return out;
}

SparseVec TotalComplex::apply(const GhostOp& op, const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, c] : v.e) out.axpy(c, apply(op, i));
  return out;
}

Subspace TotalComplex::fullSpace() const {
  Subspace s;
  long n = dimTotal();
  s.idx.reserve(n);
  for (long i = 0; i < n; ++i) s.push(i);
  return s;
}

Subspace TotalComplex::relativeSector() const {
  Subspace s;
  const auto& sp = gh.space;
  for (long g = 0; g < sp.numStates(); ++g) {
    if (sp.hCount(static_cast<State>(g)) != 0) continue;
    for (int v = 0; v < dimV; ++v) s.push(index(static_cast<State>(g), v));
  }
  return s;
}

Subspace TotalComplex::relativeSpace() const {
  Subspace s;
  const auto& sp = gh.space;
  for (long g = 0; g < sp.numStates(); ++g) {
    if (sp.hCount(static_cast<State>(g)) != 0) continue;
    for (int v = 0; v < dimV; ++v) {
      long i = index(static_cast<State>(g), v);
      if (weightZero(i)) s.push(i);
    }
  }
  return s;
}

Subspace TotalComplex::hInvariantSpace() const {
  Subspace s;
  const auto& sp = gh.space;
  for (long g = 0; g < sp.numStates(); ++g) {
    for (int v = 0; v < dimV; ++v) {
      long i = index(static_cast<State>(g), v);
      if (weightZero(i)) s.push(i);
    }
  }
  return s;
}

Subspace TotalComplex::polarizedSpace() const {
  Subspace s;
  const auto& sp = gh.space;
  for (long g = 0; g < sp.numStates(); ++g) {
    if (sp.bCount(static_cast<State>(g)) != 0) continue;
    for (int v = 0; v < dimV; ++v) s.push(index(static_cast<State>(g), v));
  }
  return s;
}

SparseMatrix TotalComplex::materialize(const GhostOp& op, const Subspace& s, bool* stays) const {
  SparseMatrix m(s.dim(), s.dim());
  bool ok = true;
  for (int j = 0; j < s.dim(); ++j) {
    SparseVec img = apply(op, s.idx[j]);
    for (const auto& [i, v] : img.e) {
      auto it = s.pos.find(i);
      if (it == s.pos.end()) {
        ok = false;
      } else {
        m.col[j].set(it->second, v);
      }
    }
  }
  if (stays) *stays = ok;
  return m;
}

TotalComplex buildTotalComplex(const RootDatum& d, const rep::WeightModule& m,
                               const roots::Weight& chi) {
  TotalComplex tc;
  tc.datum = &d;
  tc.module = &m;
  tc.chi = chi;
  tc.r = roots::anomalyCoefficients(d, chi);
  tc.gh = ghost::buildGhostSector(d);
  tc.constraints = rep::shiftedConstraints(m, chi);
  tc.dimV = m.dim;

  auto& root_id = tc.matter_root_id;
  auto& cartan_id = tc.matter_cartan_id;
  cartan_id.resize(d.rank_l);
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    root_id[a] = static_cast<int>(tc.matter.size());
    tc.matter.push_back(tc.constraints.root(a));
  }
  for (int i = 0; i < d.rank_l; ++i) {
    cartan_id[i] = static_cast<int>(tc.matter.size());
    tc.matter.push_back(tc.constraints.l_cartan[i]);
  }

  // D = sum_a c^{-a} L_a + sum_i c^i L_i + d x 1
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    tc.D.add(Rational(1), {Gen::c(-a)}, root_id[a]);
  }
  for (int i = 0; i < d.rank_l; ++i) tc.D.add(Rational(1), {Gen::ci(i)}, cartan_id[i]);
  tc.D = tc.D.plus(tc.gh.d);

  // L^tot_x = 1 x L_x + L_x x 1
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    GhostOp op;
    op.add(Rational(1), {}, root_id[a]);
    tc.l_tot_root.emplace(a, op.plus(tc.gh.l_root.at(a)));
  }
  for (int i = 0; i < d.rank_l; ++i) {
    GhostOp op;
    op.add(Rational(1), {}, cartan_id[i]);
    tc.l_tot_cartan.push_back(op.plus(tc.gh.l_cartan[i]));
  }

  // M^i = {D, c^i} = sum_{a>0} c^{-a} c^a H^i_a
  for (int i = 0; i < d.rank_l; ++i) {
    GhostOp op;
    for (int a = 1; a <= d.num_positive; ++a) {
      op.add(Rational(d.coroots[a - 1][i]), {Gen::c(-a), Gen::c(a)});
    }
    tc.m_op.push_back(op);
  }

  tc.j_plus = tc.gh.jPlus(tc.r);
  tc.j_minus = tc.gh.jMinus(tc.r);

  // D_rel = -1/2 sum_{a,b in R} N_ab c^{-a} c^{-b} b_{a+b} + sum_a c^{-a} L_a
  Rational mhalf(-1, 2);
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    for (int b = -d.num_positive; b <= d.num_positive; ++b) {
      if (b == 0) continue;
      RootIdx s = d.sum(a, b);
      if (s == 0) continue;
      tc.d_rel.add(mhalf * d.n(a, b), {Gen::c(-a), Gen::c(-b), Gen::b(s)});
    }
  }
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    tc.d_rel.add(Rational(1), {Gen::c(-a)}, root_id[a]);
  }

  // nilpotent-half differentials and the cross actions
  for (int a = 1; a <= d.num_positive; ++a) {
    for (int b = 1; b <= d.num_positive; ++b) {
      RootIdx s = d.sum(a, b);
      if (s == 0) continue;
      tc.del_bar.add(mhalf * d.n(a, b), {Gen::c(-a), Gen::c(-b), Gen::b(s)});
      tc.del.add(mhalf * d.n(a, b), {Gen::c(a), Gen::c(b), Gen::b(-s)});
    }
  }
  for (int a = 1; a <= d.num_positive; ++a) {
    GhostOp tp, tm;
    for (int b = 1; b <= d.num_positive; ++b) {
      RootIdx s = d.sum(a, -b);
      if (s >= 0) continue;  // only beta with beta - alpha a positive root
      tp.add(-d.n(a, -b), {Gen::c(b), Gen::b(s)});
      tm.add(-d.n(a, -b), {Gen::c(-b), Gen::b(-s)});
    }
    tc.t_cross.emplace(a, std::move(tp));
    tc.t_cross.emplace(-a, std::move(tm));
  }

  // bidegree (1,0) and (0,-1) components of D_rel
  for (int a = 1; a <= d.num_positive; ++a) {
    tc.d_bar.add(Rational(1), {Gen::c(-a)}, root_id[a]);
    tc.d_script.add(Rational(1), {Gen::c(a)}, root_id[-a]);
  }
  tc.d_bar = tc.d_bar.plus(tc.del_bar);
  tc.d_script = tc.d_script.plus(tc.del);
  for (int a = 1; a <= d.num_positive; ++a) {
    tc.d_bar = tc.d_bar.plus(tc.t_cross.at(a).withLeft(Gen::c(-a)));
    tc.d_script = tc.d_script.plus(tc.t_cross.at(-a).withLeft(Gen::c(a)));
  }
  tc.d_c = tc.d_script.plus(tc.d_bar.scaled(Rational(-1)));

  return tc;
}

AnomalousData anomalousSubspace(const TotalComplex& tc) {
  const auto& sp = tc.gh.space;
  AnomalousData out;
  out.dimV = tc.dimV;
  // group ghost states by (2 gh_tot, ghost weight); J^+ preserves the weight
  // and raises gh_tot by two, so its kernel is the direct sum over groups
  std::map<std::pair<int, roots::Weight>, std::vector<State>> groups;
  for (long g = 0; g < sp.numStates(); ++g) {
    State s = static_cast<State>(g);
    Rational two_r = tc.gh.ghTotEigen(s) * 2;
    groups[{static_cast<int>(two_r.get_num().get_si()), tc.gh.ghostWeight(s)}].push_back(s);
  }
  for (const auto& [key, states] : groups) {
    SparseMatrix cols(static_cast<int>(sp.numStates()), static_cast<int>(states.size()));
    for (size_t j = 0; j < states.size(); ++j) {
      cols.col[j] = ghost::applyPure(sp, tc.j_plus, states[j]);
    }
    auto ker = linalg::nullspace(cols);
    if (ker.dim() == 0) continue;
    auto& dst = out.ghost_kernel_by_2r[key.first];
    dst.ambient = static_cast<int>(sp.numStates());
    for (const auto& v : ker.vecs) {
      SparseVec lifted;
      for (const auto& [k, c] : v.e) lifted.set(static_cast<int>(states[k]), c);
      dst.vecs.push_back(std::move(lifted));
    }
  }
  for (const auto& [two_r, basis] : out.ghost_kernel_by_2r) {
    out.dim_by_2r[two_r] = static_cast<long>(basis.dim()) * tc.dimV;
  }
  return out;
}

long AnomalousData::totalDim() const {
  long t = 0;
  for (const auto& [k, v] : dim_by_2r) t += v;
  return t;
}

int RelativeData::dim() const {
  int t = 0;
  for (const auto& [r, b] : basis_by_deg) t += static_cast<int>(b.size());
  return t;
}

int RelativeData::dimAt(int r) const {
  auto it = basis_by_deg.find(r);
  return it == basis_by_deg.end() ? 0 : static_cast<int>(it->second.size());
}

SparseMatrix RelativeData::basisMatrix(int r) const {
  auto it = basis_by_deg.find(r);
  std::vector<SparseVec> cols;
  if (it != basis_by_deg.end()) cols = it->second;
  return SparseMatrix::fromColumns(carrier.dim(), cols);
}

RelativeData relativeSubspace(const TotalComplex& tc) {
  RelativeData out;
  out.carrier = tc.relativeSpace();
  // group carrier positions by bidegree; J^+ maps (p,q) into (p+1,q-1)
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (int j = 0; j < out.carrier.dim(); ++j) {
    long i = out.carrier.idx[j];
    groups[{tc.ghBarEigen(i), tc.ghEigen(i)}].push_back(j);
  }
  bool stays = true;
  SparseMatrix jp = tc.materialize(tc.j_plus, out.carrier, &stays);
  if (!stays) throw std::runtime_error("relativeSubspace: J+ leaves the carrier");
  for (const auto& [pq, positions] : groups) {
    SparseMatrix cols(out.carrier.dim(), static_cast<int>(positions.size()));
    for (size_t k = 0; k < positions.size(); ++k) cols.col[k] = jp.col[positions[k]];
    auto ker = linalg::nullspace(cols);
    if (ker.dim() == 0) continue;
    out.dim_by_bidegree[pq] = ker.dim();
    int r = pq.first - pq.second;
    for (const auto& v : ker.vecs) {
      SparseVec lifted;
      for (const auto& [k, c] : v.e) lifted.set(positions[k], c);
      out.basis_by_deg[r].push_back(std::move(lifted));
    }
  }
  return out;
}

GhostOp clusterG(const TotalComplex& tc, int a) {
  GhostOp op;
  op.add(Rational(1), {Gen::c(-a), Gen::b(-a)});
  return op;
}

GhostOp clusterG2(const TotalComplex& tc, int a, int b) {
  GhostOp op;
  op.add(Rational(1) / tc.r.of(a), {Gen::b(-a), Gen::c(-b)});
  op.add(Rational(1) / tc.r.of(b), {Gen::b(-b), Gen::c(-a)});
  return op;
}

long clusterGeneratedDim(const TotalComplex& tc) {
  const auto& sp = tc.gh.space;
  std::vector<GhostOp> gens;
  for (int a = 1; a <= sp.m; ++a) gens.push_back(clusterG(tc, a));
  for (int a = 1; a <= sp.m; ++a)
    for (int b = a + 1; b <= sp.m; ++b) gens.push_back(clusterG2(tc, a, b));
  for (int a = 1; a <= sp.m; ++a) {
    GhostOp op;
    op.add(Rational(1), {Gen::c(-a)});
    gens.push_back(op);
  }
  for (int i = 0; i < sp.l; ++i) {
    GhostOp op;
    op.add(Rational(1), {Gen::ci(i)});
    gens.push_back(op);
  }
  linalg::IncrementalSpan span;
  std::vector<SparseVec> fresh;
  SparseVec vac = linalg::unitVec(static_cast<int>(sp.vacuum()));
  span.add(vac);
  fresh.push_back(vac);
  while (!fresh.empty()) {
    std::vector<SparseVec> next;
    for (const auto& v : fresh) {
      for (const auto& g : gens) {
        SparseVec img = ghost::applyPure(sp, g, v);
        if (img.empty()) continue;
        if (span.add(img)) next.push_back(img);
      }
    }
    fresh = std::move(next);
  }
  return span.dim();
}

}  // namespace brst::total
