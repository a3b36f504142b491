#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "linalg.hpp"
#include "rootsystem.hpp"

namespace brst::ghost {

// Basis states of the ghost Clifford module: subsets of creation operators
// applied to the vacuum in the canonical factor order
//   c^1 ... c^l  c^{-a_1} ... c^{-a_m}  b_{-a_1} ... b_{-a_m}
// packed into one word, bit position == position in the factor order:
//   bits [0, l)       Cartan ghosts c^i
//   bits [l, l+m)     c^{-a} factors, positive-root order
//   bits [l+m, l+2m)  b_{-a} factors, positive-root order
using State = std::uint32_t;

struct GhostSpace {
  int m = 0;  // number of positive roots
  int l = 0;  // rank

  int bits() const { return 2 * m + l; }
  long numStates() const { return 1L << bits(); }
  State vacuum() const { return 0; }
  State fullCartan() const { return (State(1) << l) - 1; }  // c^1...c^l omega

  int cartanBit(int i) const { return i; }
  int cNegBit(int k) const { return l + k - 1; }      // k = positive root index
  int bNegBit(int k) const { return l + m + k - 1; }

  int cCount(State s) const { return __builtin_popcount((s >> l) & ((1u << m) - 1)); }
  int bCount(State s) const { return __builtin_popcount(s >> (l + m)); }
  int hCount(State s) const { return __builtin_popcount(s & ((1u << l) - 1)); }
};

// Clifford generators. Root generators carry a signed root index: CRoot(-k)
// is the creator c^{-a_k}, CRoot(+k) the annihilator c^{a_k}; likewise BRoot.
struct Gen {
  enum Kind : std::uint8_t { CRoot, BRoot, CCartan, BCartan } kind;
  int index;

  static Gen c(int signed_root) { return {CRoot, signed_root}; }
  static Gen b(int signed_root) { return {BRoot, signed_root}; }
  static Gen ci(int i) { return {CCartan, i}; }
  static Gen bi(int i) { return {BCartan, i}; }
  // the * conjugation of the neutral pairing; the sign goes to the caller:
  // c^a -> -c^{-a}, b_a -> -b_{-a}, c^i -> c^i, b_i -> b_i
  std::pair<Gen, int> conjugate() const;
};

struct Applied {
  State state = 0;
  int sign = 0;  // 0 means the generator annihilated the state
};

// One audited sign routine: creation inserts a factor with the parity of the
// transpositions to its canonical slot, annihilation contracts a present
// factor with the same parity rule.
Applied cliffordApply(const GhostSpace& sp, Gen g, State s);

// Normal-ordered polynomial in the Clifford generators, optionally tensored
// with one matter operator per term (index into an external matrix table,
// -1 = identity). Generators apply right to left.
struct Term {
  Rational coeff;
  std::vector<Gen> gens;
  int matter = -1;
};

struct GhostOp {
  std::vector<Term> terms;

  bool pureGhost() const;
  GhostOp& add(const Rational& c, std::vector<Gen> gens, int matter = -1);
  GhostOp scaled(const Rational& c) const;
  GhostOp plus(const GhostOp& o) const;
  // generator prefixed on the left (applied last)
  GhostOp withLeft(Gen g) const;
  // product of pure ghost polynomials (this applied after o)
  GhostOp composePure(const GhostOp& o) const;
};

GhostOp commutatorPure(const GhostOp& a, const GhostOp& b);
GhostOp anticommutatorPure(const GhostOp& a, const GhostOp& b);

// Application of a pure ghost polynomial to a basis state / sparse vector
// over ghost states.
linalg::SparseVec applyPure(const GhostSpace& sp, const GhostOp& op, State s);
linalg::SparseVec applyPure(const GhostSpace& sp, const GhostOp& op, const linalg::SparseVec& v);
linalg::SparseMatrix materializePure(const GhostSpace& sp, const GhostOp& op);

// Operator suite on the ghost sector for a fixed root datum.
struct GhostSector {
  const roots::RootDatum* datum = nullptr;
  GhostSpace space;

  // Koszul operators (anomaly-free) keyed by signed root / Cartan index
  std::map<roots::RootIdx, GhostOp> l_nil_root;
  std::vector<GhostOp> l_nil_cartan;
  GhostOp d_nil;

  // normally ordered counterparts
  std::map<roots::RootIdx, GhostOp> l_root;  // identical to l_nil_root
  std::vector<GhostOp> l_cartan;
  GhostOp d;
  GhostOp rho_op;

  // gradings
  GhostOp gh_tot, gh_bar, gh, gh_rel, deg;

  Rational ghTotEigen(State s) const;
  int ghBarEigen(State s) const { return space.cCount(s); }
  int ghEigen(State s) const { return space.bCount(s); }
  int ghRelEigen(State s) const { return ghBarEigen(s) - ghEigen(s); }
  int degEigen(State s) const { return ghBarEigen(s) + ghEigen(s); }
  // weight of the state under the normally ordered Cartan action (the vacuum
  // has weight zero, every root creator lowers by its root)
  roots::Weight ghostWeight(State s) const;

  // sl(2) anomaly triple
  GhostOp jPlus(const roots::AnomalyCoefficients& r) const;
  GhostOp jMinus(const roots::AnomalyCoefficients& r) const;
};

GhostSector buildGhostSector(const roots::RootDatum& d);

// Neutral pairing on the ghost module: unique hermitean pairing with
// (omega, c^1...c^l omega) = 1 and the generator conjugation rules.
Rational neutralPairing(const GhostSpace& sp, State s, State t);
// matrix P with P(i,j) = (state_i, state_j); one entry per row
linalg::SparseMatrix pairingMatrix(const GhostSpace& sp);

}  // namespace brst::ghost
