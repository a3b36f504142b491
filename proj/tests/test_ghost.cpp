#include "doctest.h"

#include <set>

#include "ghost.hpp"

using namespace brst;
using namespace brst::roots;
using namespace brst::ghost;
using linalg::SparseMatrix;
using linalg::SparseVec;

namespace {

std::vector<Gen> allGenerators(const RootDatum& d) {
  std::vector<Gen> gens;
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    gens.push_back(Gen::c(a));
    gens.push_back(Gen::b(a));
  }
  for (int i = 0; i < d.rank_l; ++i) {
    gens.push_back(Gen::ci(i));
    gens.push_back(Gen::bi(i));
  }
  return gens;
}

SparseMatrix genMatrix(const GhostSpace& sp, Gen g) {
  GhostOp op;
  op.add(Rational(1), {g});
  return materializePure(sp, op);
}

// the expected anticommutator value {g1, g2} from the Clifford relations
Rational cliffordDelta(Gen g1, Gen g2) {
  auto val = [](Gen c, Gen b) -> Rational {
    if (c.kind == Gen::CRoot && b.kind == Gen::BRoot) {
      return c.index == -b.index ? Rational(1) : Rational(0);
    }
    if (c.kind == Gen::CCartan && b.kind == Gen::BCartan) {
      return c.index == b.index ? Rational(1) : Rational(0);
    }
    return Rational(0);
  };
  return val(g1, g2) + val(g2, g1);
}

}  // namespace

TEST_CASE("clifford relations hold as matrix identities") {
  for (auto [t, l] : {std::pair<char, int>{'A', 1}, {'A', 2}}) {
    auto d = buildRootSystem(t, l);
    GhostSpace sp{d.num_positive, d.rank_l};
    auto gens = allGenerators(d);
    std::vector<SparseMatrix> mats;
    for (auto g : gens) mats.push_back(genMatrix(sp, g));
    int n = static_cast<int>(sp.numStates());
    for (size_t i = 0; i < gens.size(); ++i) {
      for (size_t j = i; j < gens.size(); ++j) {
        SparseMatrix anti = linalg::anticommutator(mats[i], mats[j]);
        SparseMatrix expect =
            linalg::scale(SparseMatrix::identity(n), cliffordDelta(gens[i], gens[j]));
        CHECK(anti == expect);
      }
    }
  }
}

TEST_CASE("vacuum annihilation and creation signs") {
  auto d = buildRootSystem('A', 2);
  GhostSpace sp{d.num_positive, d.rank_l};
  State omega = sp.vacuum();

  // c^a omega = 0, b_a omega = 0 (a > 0), b_i omega = 0
  for (int a = 1; a <= d.num_positive; ++a) {
    CHECK(cliffordApply(sp, Gen::c(a), omega).sign == 0);
    CHECK(cliffordApply(sp, Gen::b(a), omega).sign == 0);
  }
  for (int i = 0; i < d.rank_l; ++i) CHECK(cliffordApply(sp, Gen::bi(i), omega).sign == 0);

  // b_a (c^{-a} omega) = omega: single contraction
  auto ca = cliffordApply(sp, Gen::c(-1), omega);
  REQUIRE(ca.sign == 1);
  auto back = cliffordApply(sp, Gen::b(1), ca.state);
  CHECK(back.sign == 1);
  CHECK(back.state == omega);

  // applying the later-ordered creator on the left costs one transposition
  auto c1 = cliffordApply(sp, Gen::c(-1), omega);
  auto c2_after = cliffordApply(sp, Gen::c(-2), c1.state);
  auto c2 = cliffordApply(sp, Gen::c(-2), omega);
  auto c1_after = cliffordApply(sp, Gen::c(-1), c2.state);
  // c^{-a2}(c^{-a1} omega) = -(c^{-a1} c^{-a2} omega): one transposition
  CHECK(c2_after.state == c1_after.state);
  CHECK(c2_after.sign == -1);
  CHECK(c1_after.sign == 1);
  // and in operator form the two orders differ by the sign
  GhostOp ab, ba;
  ab.add(rat(1), {Gen::c(-2), Gen::c(-1)});
  ba.add(rat(1), {Gen::c(-1), Gen::c(-2)});
  auto va = applyPure(sp, ab, omega);
  auto vb = applyPure(sp, ba, omega);
  REQUIRE(va.nnz() == 1);
  CHECK(va.e[0].first == vb.e[0].first);
  CHECK(va.e[0].second == -vb.e[0].second);
}

TEST_CASE("creation signs match an independent exterior-algebra oracle") {
  // oracle: wedge words over three symbols with explicit sorted-insertion sign
  auto insertSign = [](const std::vector<int>& word, int sym) -> std::pair<int, int> {
    int before = 0;
    for (int s : word) {
      if (s == sym) return {0, 0};
      if (s < sym) ++before;
    }
    return {(before % 2) ? -1 : 1, before};
  };
  auto d = buildRootSystem('A', 2);
  GhostSpace sp{d.num_positive, d.rank_l};
  // creators in canonical order get symbols 0..2m+l-1 matching bit positions
  std::vector<Gen> creators;
  for (int i = 0; i < d.rank_l; ++i) creators.push_back(Gen::ci(i));
  for (int k = 1; k <= d.num_positive; ++k) creators.push_back(Gen::c(-k));
  for (int k = 1; k <= d.num_positive; ++k) creators.push_back(Gen::b(-k));
  // all words of length <= 3 over distinct symbols
  int n = static_cast<int>(creators.size());
  for (int s1 = 0; s1 < n; ++s1) {
    for (int s2 = 0; s2 < n; ++s2) {
      for (int s3 = 0; s3 < n; ++s3) {
        std::vector<int> symbols = {s1, s2, s3};
        std::vector<int> word;
        int oracle_sign = 1;
        bool oracle_zero = false;
        State state = sp.vacuum();
        int impl_sign = 1;
        bool impl_zero = false;
        // apply right-to-left: s3 first
        for (auto it = symbols.rbegin(); it != symbols.rend(); ++it) {
          auto [osign, pos] = insertSign(word, *it);
          if (osign == 0) {
            oracle_zero = true;
          } else {
            word.insert(std::lower_bound(word.begin(), word.end(), *it), *it);
            oracle_sign *= osign;
          }
          auto ap = cliffordApply(sp, creators[*it], state);
          if (ap.sign == 0) {
            impl_zero = true;
          } else {
            state = ap.state;
            impl_sign *= ap.sign;
          }
        }
        CHECK(oracle_zero == impl_zero);
        if (!oracle_zero) CHECK(oracle_sign == impl_sign);
      }
    }
  }
}

TEST_CASE("koszul operators represent the unextended algebra") {
  for (auto [t, l] : {std::pair<char, int>{'A', 1}, {'A', 2}}) {
    auto d = buildRootSystem(t, l);
    auto g = buildGhostSector(d);
    const auto& sp = g.space;
    int n = static_cast<int>(sp.numStates());

    std::map<int, SparseMatrix> lr;
    for (int a = -d.num_positive; a <= d.num_positive; ++a) {
      if (a == 0) continue;
      lr.emplace(a, materializePure(sp, g.l_nil_root.at(a)));
    }
    std::vector<SparseMatrix> lc;
    for (int i = 0; i < l; ++i) lc.push_back(materializePure(sp, g.l_nil_cartan[i]));
    auto lH = [&](int a) {
      const auto& co = d.coroots[std::abs(a) - 1];
      SparseMatrix h(n, n);
      for (int i = 0; i < l; ++i) {
        if (co[i] == 0) continue;
        h = linalg::add(h, linalg::scale(lc[i], Rational(a > 0 ? co[i] : -co[i])));
      }
      return h;
    };

    for (int a = -d.num_positive; a <= d.num_positive; ++a) {
      if (a == 0) continue;
      for (int b = -d.num_positive; b <= d.num_positive; ++b) {
        if (b == 0) continue;
        SparseMatrix lhs = linalg::commutator(lr.at(a), lr.at(b));
        SparseMatrix rhs(n, n);
        int s = d.sum(a, b);
        if (s != 0) rhs = linalg::scale(lr.at(s), d.n(a, b));
        if (a == -b) rhs = linalg::sub(rhs, lH(a));  // [L_a, L_{-a}] = -L_{H_a}
        CHECK(lhs == rhs);
      }
      for (int i = 0; i < l; ++i) {
        CHECK(linalg::commutator(lc[i], lr.at(a)) == linalg::scale(lr.at(a), d.rootOnCartan(a, i)));
      }
    }

    // the vacuum is not invariant: L^nil_i omega = 2 <rho, H_i> omega
    for (int i = 0; i < l; ++i) {
      auto v = applyPure(sp, g.l_nil_cartan[i], sp.vacuum());
      REQUIRE(v.nnz() == 1);
      CHECK(v.get(0) == rat(2) * rho(d).coords[i]);
    }

    // (d^nil)^2 = 0
    SparseMatrix dn = materializePure(sp, g.d_nil);
    CHECK(linalg::mul(dn, dn).isZero());
  }
}

TEST_CASE("normal ordering: lemmas on L_i, d, and the curvature") {
  for (auto [t, l] : {std::pair<char, int>{'A', 1}, {'A', 2}}) {
    auto d = buildRootSystem(t, l);
    auto g = buildGhostSector(d);
    const auto& sp = g.space;
    int n = static_cast<int>(sp.numStates());

    // L_i = L^nil_i - 2 <rho, H_i>
    for (int i = 0; i < l; ++i) {
      SparseMatrix lhs = materializePure(sp, g.l_cartan[i]);
      SparseMatrix rhs = linalg::sub(
          materializePure(sp, g.l_nil_cartan[i]),
          linalg::scale(SparseMatrix::identity(n), rat(2) * rho(d).coords[i]));
      CHECK(lhs == rhs);
      // L_i omega = 0
      CHECK(applyPure(sp, g.l_cartan[i], sp.vacuum()).empty());
    }

    // extended bracket: [L_a, L_{-a}] = -(L_{H_a} + 2 <rho, H_a>)
    std::map<int, SparseMatrix> lr;
    for (int a = -d.num_positive; a <= d.num_positive; ++a) {
      if (a == 0) continue;
      lr.emplace(a, materializePure(sp, g.l_root.at(a)));
    }
    std::vector<SparseMatrix> lc;
    for (int i = 0; i < l; ++i) lc.push_back(materializePure(sp, g.l_cartan[i]));
    for (int a = -d.num_positive; a <= d.num_positive; ++a) {
      if (a == 0) continue;
      for (int b = -d.num_positive; b <= d.num_positive; ++b) {
        if (b == 0) continue;
        SparseMatrix lhs = linalg::commutator(lr.at(a), lr.at(b));
        SparseMatrix rhs(n, n);
        int s = d.sum(a, b);
        if (s != 0) rhs = linalg::scale(lr.at(s), d.n(a, b));
        if (a == -b) {
          const auto& co = d.coroots[std::abs(a) - 1];
          for (int i = 0; i < l; ++i) {
            if (co[i] == 0) continue;
            rhs = linalg::sub(rhs, linalg::scale(lc[i], Rational(a > 0 ? co[i] : -co[i])));
          }
          rhs = linalg::sub(rhs, linalg::scale(SparseMatrix::identity(n),
                                               rat(2) * d.pair(rho(d), a)));
        }
        CHECK(lhs == rhs);
      }
    }

    // d = d^nil - 2 rho_op and d omega = 0
    SparseMatrix dmat = materializePure(sp, g.d);
    SparseMatrix rhs = linalg::sub(materializePure(sp, g.d_nil),
                                   linalg::scale(materializePure(sp, g.rho_op), rat(2)));
    CHECK(dmat == rhs);
    CHECK(applyPure(sp, g.d, sp.vacuum()).empty());

    // d^2 = -2 sum_{a>0} c^{-a} c^a <rho, H_a>
    SparseMatrix d2 = linalg::mul(dmat, dmat);
    GhostOp curv;
    for (int a = 1; a <= d.num_positive; ++a) {
      curv.add(rat(-2) * d.pair(rho(d), a), {Gen::c(-a), Gen::c(a)});
    }
    CHECK(d2 == materializePure(sp, curv));
  }
}

TEST_CASE("gradings") {
  auto d = buildRootSystem('A', 2);
  auto g = buildGhostSector(d);
  const auto& sp = g.space;
  int n = static_cast<int>(sp.numStates());

  SparseMatrix ghtot = materializePure(sp, g.gh_tot);
  // diagonal with the closed-form eigenvalues
  for (int s = 0; s < n; ++s) {
    auto col = ghtot.col[s];
    Rational eig = g.ghTotEigen(static_cast<State>(s));
    if (isZero(eig)) {
      CHECK(col.empty());
    } else {
      REQUIRE(col.nnz() == 1);
      CHECK(col.get(s) == eig);
    }
  }
  // vacuum eigenvalue -l/2
  CHECK(g.ghTotEigen(sp.vacuum()) == rat(-2, 2));

  // [gh_tot, c] = c and [gh_tot, b] = -b for every generator
  for (auto gen : allGenerators(d)) {
    SparseMatrix mg = genMatrix(sp, gen);
    SparseMatrix br = linalg::commutator(ghtot, mg);
    bool is_c = gen.kind == Gen::CRoot || gen.kind == Gen::CCartan;
    CHECK(br == linalg::scale(mg, rat(is_c ? 1 : -1)));
  }

  // [gh_tot, d] = d
  SparseMatrix dmat = materializePure(sp, g.d);
  CHECK(linalg::commutator(ghtot, dmat) == dmat);

  // bidegree bookkeeping: gh_rel = gh_bar - gh, deg = gh_bar + gh
  SparseMatrix ghbar = materializePure(sp, g.gh_bar);
  SparseMatrix gh = materializePure(sp, g.gh);
  CHECK(materializePure(sp, g.gh_rel) == linalg::sub(ghbar, gh));
  CHECK(materializePure(sp, g.deg) == linalg::add(ghbar, gh));
  for (int s = 0; s < n; ++s) {
    CHECK(ghbar.get(s, s) == rat(g.ghBarEigen(static_cast<State>(s))));
    CHECK(gh.get(s, s) == rat(g.ghEigen(static_cast<State>(s))));
  }
}

TEST_CASE("neutral pairing") {
  for (auto [t, l] : {std::pair<char, int>{'A', 1}, {'A', 2}}) {
    auto d = buildRootSystem(t, l);
    auto g = buildGhostSector(d);
    const auto& sp = g.space;
    int n = static_cast<int>(sp.numStates());

    // normalization and omega against itself
    CHECK(neutralPairing(sp, sp.vacuum(), sp.fullCartan()) == rat(1));
    CHECK(neutralPairing(sp, sp.vacuum(), sp.vacuum()) == rat(0));

    SparseMatrix p = pairingMatrix(sp);
    // non-degenerate; graded-symmetric (literal symmetry is impossible for
    // l >= 2: the conjugation property forces (c^1 c^2 w, w) = -(w, c^1 c^2 w))
    CHECK(linalg::rank(p) == n);
    SparseMatrix pt = p.transpose();
    for (int j = 0; j < n; ++j) {
      for (const auto& [i, v] : p.col[j].e) {
        CHECK(abs(pt.col[j].get(i)) == abs(v));
      }
    }

    // defining property (A Psi, Phi) = (Psi, A^* Phi) for every generator
    for (auto gen : allGenerators(d)) {
      auto [cg, csign] = gen.conjugate();
      SparseMatrix a = genMatrix(sp, gen);
      SparseMatrix astar = linalg::scale(genMatrix(sp, cg), rat(csign));
      // P-matrix form: A^T P = P A^*
      CHECK(linalg::mul(a.transpose(), p) == linalg::mul(p, astar));
    }

    // degree pairing r against -r
    for (int s = 0; s < n; ++s) {
      for (const auto& [ts, v] : p.col[s].e) {
        CHECK(g.ghTotEigen(static_cast<State>(ts)) == -g.ghTotEigen(static_cast<State>(s)));
      }
    }

    // d is self-adjoint: (d Psi, Phi) = (Psi, d Phi)
    SparseMatrix dmat = materializePure(sp, g.d);
    CHECK(linalg::mul(dmat.transpose(), p) == linalg::mul(p, dmat));

    // normally ordered generators obey the module conjugation rules:
    // L_a^* = -L_{-a}, L_i^* = L_i
    for (int a = -d.num_positive; a <= d.num_positive; ++a) {
      if (a == 0) continue;
      SparseMatrix la = materializePure(sp, g.l_root.at(a));
      SparseMatrix lma = materializePure(sp, g.l_root.at(-a));
      CHECK(linalg::mul(la.transpose(), p) == linalg::mul(p, linalg::scale(lma, rat(-1))));
    }
    for (int i = 0; i < l; ++i) {
      SparseMatrix li = materializePure(sp, g.l_cartan[i]);
      CHECK(linalg::mul(li.transpose(), p) == linalg::mul(p, li));
    }
  }
}

TEST_CASE("sl(2) anomaly triple on the ghost sector") {
  auto d = buildRootSystem('A', 2);
  auto g = buildGhostSector(d);
  const auto& sp = g.space;
  Weight chi{{rat(1), rat(1)}};
  auto r = anomalyCoefficients(d, chi);

  SparseMatrix jp = materializePure(sp, g.jPlus(r));
  SparseMatrix jm = materializePure(sp, g.jMinus(r));
  SparseMatrix ghrel = materializePure(sp, g.gh_rel);
  SparseMatrix ghbar = materializePure(sp, g.gh_bar);
  SparseMatrix gh = materializePure(sp, g.gh);
  SparseMatrix deg = materializePure(sp, g.deg);

  CHECK(applyPure(sp, g.jPlus(r), sp.vacuum()).empty());
  CHECK(applyPure(sp, g.jMinus(r), sp.vacuum()).empty());

  CHECK(linalg::commutator(jp, jm) == ghrel);
  CHECK(linalg::commutator(ghrel, jp) == linalg::scale(jp, rat(2)));
  CHECK(linalg::commutator(ghrel, jm) == linalg::scale(jm, rat(-2)));
  CHECK(linalg::commutator(ghbar, jp) == jp);
  CHECK(linalg::commutator(ghbar, jm) == linalg::scale(jm, rat(-1)));
  CHECK(linalg::commutator(gh, jp) == linalg::scale(jp, rat(-1)));
  CHECK(linalg::commutator(gh, jm) == jm);
  CHECK(linalg::commutator(deg, jp).isZero());
  CHECK(linalg::commutator(deg, jm).isZero());

  // [J^+, b_a] = -sign(a) r_a c^a
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    SparseMatrix ba = genMatrix(sp, Gen::b(a));
    SparseMatrix ca = genMatrix(sp, Gen::c(a));
    Rational coeff = rat(a > 0 ? -1 : 1) * r.of(a);
    CHECK(linalg::commutator(jp, ba) == linalg::scale(ca, coeff));
  }
}
