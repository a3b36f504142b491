#include "ghost.hpp"

#include <stdexcept>

namespace brst::ghost {

using linalg::SparseMatrix;
using linalg::SparseVec;
using roots::RootDatum;
using roots::RootIdx;

std::pair<Gen, int> Gen::conjugate() const {
  switch (kind) {
    case CRoot:
      return {Gen::c(-index), -1};
    case BRoot:
      return {Gen::b(-index), -1};
    case CCartan:
      return {*this, 1};
    case BCartan:
      return {*this, 1};
  }
  return {*this, 1};
}

Applied cliffordApply(const GhostSpace& sp, Gen g, State s) {
  int bit;
  bool creator;
  switch (g.kind) {
    case Gen::CRoot:
      // c^{-k} creates the c^{-a_k} factor; c^{+k} contracts b_{-a_k}
      creator = g.index < 0;
      bit = creator ? sp.cNegBit(-g.index) : sp.bNegBit(g.index);
      break;
    case Gen::BRoot:
      creator = g.index < 0;
      bit = creator ? sp.bNegBit(-g.index) : sp.cNegBit(g.index);
      break;
    case Gen::CCartan:
      creator = true;
      bit = sp.cartanBit(g.index);
      break;
    case Gen::BCartan:
      creator = false;
      bit = sp.cartanBit(g.index);
      break;
    default:
      return {};
  }
  State mask = State(1) << bit;
  if (creator == bool(s & mask)) return {};  // doubled factor or nothing to contract
  int parity = __builtin_popcount(s & (mask - 1));
  return {State(s ^ mask), (parity & 1) ? -1 : 1};
}

bool GhostOp::pureGhost() const {
  for (const auto& t : terms)
    if (t.matter != -1) return false;
  return true;
}

GhostOp& GhostOp::add(const Rational& c, std::vector<Gen> gens, int matter) {
  if (!isZero(c)) terms.push_back({c, std::move(gens), matter});
  return *this;
}

GhostOp GhostOp::scaled(const Rational& c) const {
  GhostOp r;
  if (isZero(c)) return r;
  r.terms = terms;
  for (auto& t : r.terms) t.coeff *= c;
  return r;
}

GhostOp GhostOp::plus(const GhostOp& o) const {
  GhostOp r = *this;
  r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
  return r;
}

GhostOp GhostOp::withLeft(Gen g) const {
  GhostOp r = *this;
  for (auto& t : r.terms) t.gens.insert(t.gens.begin(), g);
  return r;
}

GhostOp GhostOp::composePure(const GhostOp& o) const {
  GhostOp r;
  for (const auto& a : terms) {
    if (a.matter != -1) throw std::runtime_error("composePure: matter term");
    for (const auto& b : o.terms) {
      if (b.matter != -1) throw std::runtime_error("composePure: matter term");
      Term t;
      t.coeff = a.coeff * b.coeff;
      t.gens = a.gens;
      t.gens.insert(t.gens.end(), b.gens.begin(), b.gens.end());
      r.terms.push_back(std::move(t));
    }
  }
  return r;
}

GhostOp commutatorPure(const GhostOp& a, const GhostOp& b) {
  return a.composePure(b).plus(b.composePure(a).scaled(Rational(-1)));
}

GhostOp anticommutatorPure(const GhostOp& a, const GhostOp& b) {
  return a.composePure(b).plus(b.composePure(a));
}

SparseVec applyPure(const GhostSpace& sp, const GhostOp& op, State s) {
  SparseVec out;
  for (const auto& t : op.terms) {
    if (t.matter != -1) throw std::runtime_error("applyPure: matter term");
    State cur = s;
    int sign = 1;
    bool dead = false;
    for (auto it = t.gens.rbegin(); it != t.gens.rend(); ++it) {
      Applied a = cliffordApply(sp, *it, cur);
      if (a.sign == 0) {
        dead = true;
        break;
      }
      cur = a.state;
      sign *= a.sign;
    }
    if (!dead) out.set(cur, out.get(cur) + t.coeff * sign);
  }
  std::erase_if(out.e, [](const auto& p) { return isZero(p.second); });
  return out;
}

SparseVec applyPure(const GhostSpace& sp, const GhostOp& op, const SparseVec& v) {
  SparseVec out;
  for (const auto& [s, c] : v.e) out.axpy(c, applyPure(sp, op, static_cast<State>(s)));
  return out;
}

SparseMatrix materializePure(const GhostSpace& sp, const GhostOp& op) {
  long n = sp.numStates();
  SparseMatrix m(static_cast<int>(n), static_cast<int>(n));
  for (long s = 0; s < n; ++s) m.col[s] = applyPure(sp, op, static_cast<State>(s));
  return m;
}

namespace {

// L^nil_a = -sum_b N(a,b) c^{-b} b_{a+b} + sum_i H^i_a c^a b_i + sum_i a(H_i) c^i b_a
GhostOp koszulRoot(const RootDatum& d, RootIdx a) {
  GhostOp op;
  for (int b = -d.num_positive; b <= d.num_positive; ++b) {
    if (b == 0) continue;
    RootIdx s = d.sum(a, b);
    if (s == 0) continue;
    op.add(-d.n(a, b), {Gen::c(-b), Gen::b(s)});
  }
  const auto& co = d.coroots[std::abs(a) - 1];
  for (int i = 0; i < d.rank_l; ++i) {
    Rational h(a > 0 ? co[i] : -co[i]);
    op.add(h, {Gen::c(a), Gen::bi(i)});
  }
  for (int i = 0; i < d.rank_l; ++i) {
    op.add(d.rootOnCartan(a, i), {Gen::ci(i), Gen::b(a)});
  }
  return op;
}

// L^nil_i = -sum_b b(H_i) c^{-b} b_b  (the sign giving the vacuum weight +2 rho)
GhostOp koszulCartan(const RootDatum& d, int i) {
  GhostOp op;
  for (int b = -d.num_positive; b <= d.num_positive; ++b) {
    if (b == 0) continue;
    op.add(-d.rootOnCartan(b, i), {Gen::c(-b), Gen::b(b)});
  }
  return op;
}

// L_i = -sum_{b>0} b(H_i) (c^{-b} b_b + b_{-b} c^b)
GhostOp cartanNormal(const RootDatum& d, int i) {
  GhostOp op;
  for (int b = 1; b <= d.num_positive; ++b) {
    Rational h = d.rootOnCartan(b, i);
    op.add(-h, {Gen::c(-b), Gen::b(b)});
    op.add(-h, {Gen::b(-b), Gen::c(b)});
  }
  return op;
}

}  // namespace

GhostSector buildGhostSector(const RootDatum& d) {
  GhostSector g;
  g.datum = &d;
  g.space = GhostSpace{d.num_positive, d.rank_l};

  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    GhostOp op = koszulRoot(d, a);
    g.l_nil_root.emplace(a, op);
    g.l_root.emplace(a, std::move(op));  // normal ordering leaves these alone
  }
  for (int i = 0; i < d.rank_l; ++i) {
    g.l_nil_cartan.push_back(koszulCartan(d, i));
    g.l_cartan.push_back(cartanNormal(d, i));
  }

  Rational half(1, 2);
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    g.d_nil = g.d_nil.plus(g.l_nil_root.at(a).withLeft(Gen::c(-a)).scaled(half));
  }
  for (int i = 0; i < d.rank_l; ++i) {
    g.d_nil = g.d_nil.plus(g.l_nil_cartan[i].withLeft(Gen::ci(i)).scaled(half));
  }

  // d = 1/2 sum_{a>0} c^{-a} L_a + 1/2 sum_{a>0} L_{-a} c^a + 1/2 sum_i c^i L_i
  for (int a = 1; a <= d.num_positive; ++a) {
    g.d = g.d.plus(g.l_root.at(a).withLeft(Gen::c(-a)).scaled(half));
    GhostOp right;
    right.add(Rational(1), {Gen::c(a)});
    g.d = g.d.plus(g.l_root.at(-a).composePure(right).scaled(half));
  }
  for (int i = 0; i < d.rank_l; ++i) {
    g.d = g.d.plus(g.l_cartan[i].withLeft(Gen::ci(i)).scaled(half));
  }

  for (int i = 0; i < d.rank_l; ++i) {
    g.rho_op.add(roots::rho(d).coords[i], {Gen::ci(i)});
  }

  for (int a = 1; a <= d.num_positive; ++a) {
    g.gh_tot.add(Rational(1), {Gen::c(-a), Gen::b(a)});
    g.gh_tot.add(Rational(-1), {Gen::b(-a), Gen::c(a)});
    g.gh_bar.add(Rational(1), {Gen::c(-a), Gen::b(a)});
    g.gh.add(Rational(1), {Gen::b(-a), Gen::c(a)});
    g.gh_rel.add(Rational(1), {Gen::c(-a), Gen::b(a)});
    g.gh_rel.add(Rational(-1), {Gen::b(-a), Gen::c(a)});
    g.deg.add(Rational(1), {Gen::c(-a), Gen::b(a)});
    g.deg.add(Rational(1), {Gen::b(-a), Gen::c(a)});
  }
  for (int i = 0; i < d.rank_l; ++i) {
    g.gh_tot.add(Rational(1, 2), {Gen::ci(i), Gen::bi(i)});
    g.gh_tot.add(Rational(-1, 2), {Gen::bi(i), Gen::ci(i)});
  }
  return g;
}

Rational GhostSector::ghTotEigen(State s) const {
  return Rational(space.cCount(s) + space.hCount(s) - space.bCount(s)) -
         rat(space.l, 2);
}

roots::Weight GhostSector::ghostWeight(State s) const {
  roots::Weight w;
  w.coords.assign(space.l, Rational(0));
  for (int k = 1; k <= space.m; ++k) {
    bool cset = s & (State(1) << space.cNegBit(k));
    bool bset = s & (State(1) << space.bNegBit(k));
    int mult = int(cset) + int(bset);
    if (mult == 0) continue;
    for (int i = 0; i < space.l; ++i) {
      w.coords[i] -= datum->rootOnCartan(k, i) * mult;
    }
  }
  return w;
}

GhostOp GhostSector::jPlus(const roots::AnomalyCoefficients& r) const {
  GhostOp op;
  for (int a = 1; a <= space.m; ++a) op.add(r.of(a), {Gen::c(-a), Gen::c(a)});
  return op;
}

GhostOp GhostSector::jMinus(const roots::AnomalyCoefficients& r) const {
  GhostOp op;
  for (int a = 1; a <= space.m; ++a) op.add(Rational(1) / r.of(a), {Gen::b(-a), Gen::b(a)});
  return op;
}

Rational neutralPairing(const GhostSpace& sp, State s, State t) {
  // (X omega, t) = (omega, X^* t); the only state pairing against omega is
  // c^1...c^l omega, forced by the gh_tot and bidegree bookkeeping.
  State cur = t;
  int sign = 1;
  for (int bit = 0; bit < sp.bits(); ++bit) {
    if (!(s & (State(1) << bit))) continue;
    Gen gen = bit < sp.l              ? Gen::ci(bit)
              : bit < sp.l + sp.m     ? Gen::c(-(bit - sp.l + 1))
                                      : Gen::b(-(bit - sp.l - sp.m + 1));
    auto [cg, csign] = gen.conjugate();
    Applied a = cliffordApply(sp, cg, cur);
    if (a.sign == 0) return Rational(0);
    cur = a.state;
    sign *= csign * a.sign;
  }
  if (cur != sp.fullCartan()) return Rational(0);
  return Rational(sign);
}

SparseMatrix pairingMatrix(const GhostSpace& sp) {
  long n = sp.numStates();
  SparseMatrix p(static_cast<int>(n), static_cast<int>(n));
  for (long i = 0; i < n; ++i) {
    // the partner state is forced: complement the Cartan bits, swap c and b
    State s = static_cast<State>(i);
    State h = (~s) & ((State(1) << sp.l) - 1);
    State c = (s >> sp.l) & ((State(1) << sp.m) - 1);
    State b = s >> (sp.l + sp.m);
    State partner = h | (b << sp.l) | (c << (sp.l + sp.m));
    Rational v = neutralPairing(sp, s, partner);
    if (!isZero(v)) p.set(static_cast<int>(i), static_cast<int>(partner), v);
  }
  return p;
}

}  // namespace brst::ghost
