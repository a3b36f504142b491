#include "rootsystem.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace brst::roots {

Weight Weight::operator+(const Weight& o) const {
  Weight w = *this;
  for (size_t i = 0; i < coords.size(); ++i) w.coords[i] += o.coords[i];
  return w;
}

Weight Weight::operator-(const Weight& o) const {
  Weight w = *this;
  for (size_t i = 0; i < coords.size(); ++i) w.coords[i] -= o.coords[i];
  return w;
}

int RootDatum::height(RootIdx a) const {
  const auto& v = positive_roots[std::abs(a) - 1];
  int h = std::accumulate(v.begin(), v.end(), 0);
  return a > 0 ? h : -h;
}

std::vector<int> RootDatum::rootVec(RootIdx a) const {
  std::vector<int> v = positive_roots[std::abs(a) - 1];
  if (a < 0)
    for (int& x : v) x = -x;
  return v;
}

RootIdx RootDatum::indexOf(const std::vector<int>& v) const {
  bool nonneg = std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
  std::vector<int> key = v;
  if (!nonneg)
    for (int& x : key) x = -x;
  for (int k = 0; k < num_positive; ++k) {
    if (positive_roots[k] == key) return nonneg ? (k + 1) : -(k + 1);
  }
  return 0;
}

RootIdx RootDatum::sum(RootIdx a, RootIdx b) const {
  std::vector<int> v = rootVec(a);
  std::vector<int> w = rootVec(b);
  for (size_t i = 0; i < v.size(); ++i) v[i] += w[i];
  if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) return 0;
  return indexOf(v);
}

bool RootDatum::isRoot(const std::vector<int>& v) const { return indexOf(v) != 0; }

Rational RootDatum::bilinear(const std::vector<int>& a, const std::vector<int>& b) const {
  Rational s(0);
  for (int i = 0; i < rank_l; ++i)
    for (int j = 0; j < rank_l; ++j)
      s += Rational(a[i]) * Rational(sym_d[i] * cartan[i][j]) * Rational(b[j]);
  return s;
}

Rational RootDatum::length2(RootIdx a) const {
  auto v = rootVec(a);
  return bilinear(v, v);
}

Rational RootDatum::pair(const Weight& lambda, RootIdx a) const {
  Rational s(0);
  const auto& co = coroots[std::abs(a) - 1];
  for (int i = 0; i < rank_l; ++i) s += Rational(co[i]) * lambda.coords[i];
  return a > 0 ? s : -s;
}

Rational RootDatum::rootOnCartan(RootIdx a, int i) const {
  auto v = rootVec(a);
  int s = 0;
  for (int k = 0; k < rank_l; ++k) s += cartan[i][k] * v[k];
  return Rational(s);
}

Rational RootDatum::n(RootIdx a, RootIdx b) const {
  auto it = n_table.find({a, b});
  return it == n_table.end() ? Rational(0) : it->second;
}

Rational RootDatum::nCarter(RootIdx a, RootIdx b) const {
  auto it = n_table_carter.find({a, b});
  return it == n_table_carter.end() ? Rational(0) : it->second;
}

Weight RootDatum::simpleRootWeight(int i) const {
  Weight w;
  w.coords.resize(rank_l);
  for (int k = 0; k < rank_l; ++k) w.coords[k] = Rational(cartan[k][i]);
  return w;
}

Weight RootDatum::rootWeight(RootIdx a) const {
  Weight w;
  w.coords.resize(rank_l);
  for (int k = 0; k < rank_l; ++k) w.coords[k] = rootOnCartan(a, k);
  return w;
}

std::string RootDatum::typeName() const {
  return std::string(1, algebra_type) + std::to_string(rank_l);
}

namespace {

std::vector<std::vector<int>> cartanMatrixOf(char type, int l) {
  auto chain = [&](int n) {
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      c[i][i] = 2;
      if (i + 1 < n) {
        c[i][i + 1] = -1;
        c[i + 1][i] = -1;
      }
    }
    return c;
  };
  switch (type) {
    case 'A': {
      if (l < 1 || l > 4) throw std::runtime_error("unsupported rank for type A");
      return chain(l);
    }
    case 'B': {
      // last simple root short: <alpha_{l-1}, H_l> stays -1, <alpha_l, H_{l-1}>...
      if (l < 2 || l > 4) throw std::runtime_error("unsupported rank for type B");
      auto c = chain(l);
      c[l - 1][l - 2] = -2;  // <alpha_{l-2}, H_{l-1}> in 0-based labels
      return c;
    }
    case 'C': {
      if (l < 2 || l > 4) throw std::runtime_error("unsupported rank for type C");
      auto c = chain(l);
      c[l - 2][l - 1] = -2;
      return c;
    }
    case 'D': {
      if (l != 4) throw std::runtime_error("unsupported rank for type D");
      std::vector<std::vector<int>> c(4, std::vector<int>(4, 0));
      for (int i = 0; i < 4; ++i) c[i][i] = 2;
      auto link = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
      link(0, 1);
      link(1, 2);
      link(1, 3);
      return c;
    }
    case 'G': {
      if (l != 2) throw std::runtime_error("unsupported rank for type G");
      // alpha_1 short, alpha_2 long; (1,0) is then the 7-dimensional fundamental
      return {{2, -3}, {-1, 2}};
    }
    case 'F': {
      if (l != 4) throw std::runtime_error("unsupported rank for type F");
      auto c = chain(4);
      c[2][1] = -2;
      return c;
    }
    default:
      throw std::runtime_error("unsupported algebra type");
  }
}

// Integer symmetrizers d_i with d_i C[i][j] = d_j C[j][i].
std::vector<int> symmetrizers(const std::vector<std::vector<int>>& c) {
  int l = static_cast<int>(c.size());
  std::vector<Rational> d(l, Rational(0));
  d[0] = 1;
  // propagate along the (connected) Dynkin graph
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) {
        if (i == j || c[i][j] == 0) continue;
        if (!isZero(d[i]) && isZero(d[j])) {
          d[j] = d[i] * Rational(c[i][j]) / Rational(c[j][i]);
          changed = true;
        }
      }
  }
  Integer lcm = 1;
  for (const auto& x : d) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<int> out(l);
  for (int i = 0; i < l; ++i) {
    Rational v = d[i] * Rational(lcm);
    out[i] = static_cast<int>(v.get_num().get_si());
  }
  int g = 0;
  for (int x : out) g = std::gcd(g, x);
  for (int& x : out) x /= g;
  return out;
}

int heightOf(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

// p(a, b) = max k >= 0 with b - k a a root (or zero... zero never happens for
// distinct positive roots of a reduced system).
int rootStringDown(const RootDatum& d, RootIdx a, RootIdx b) {
  int p = 0;
  std::vector<int> v = d.rootVec(b);
  std::vector<int> av = d.rootVec(a);
  for (;;) {
    for (int i = 0; i < d.rank_l; ++i) v[i] -= av[i];
    if (!d.isRoot(v)) break;
    ++p;
  }
  return p;
}

struct CarterTable {
  const RootDatum* d;
  // positive-pair values, key (a, b) with a, b > 0
  std::map<std::pair<int, int>, Rational> pos;

  Rational lookup(RootIdx a, RootIdx b) const {
    if (a == 0 || b == 0) return Rational(0);
    RootIdx s = d->sum(a, b);
    if (s == 0) return Rational(0);
    if (a > 0 && b > 0) {
      auto it = pos.find({a, b});
      if (it != pos.end()) return it->second;
      it = pos.find({b, a});
      if (it != pos.end()) return -it->second;
      throw std::runtime_error("chevalley: positive pair not yet available");
    }
    if (a < 0 && b < 0) return -lookup(-a, -b);
    if (a < 0) return -lookup(b, a);
    // a > 0, b < 0; use the zero-sum relation on (a, b, -s)
    if (s > 0) {
      // N(a,b)/(s,s) = N(b,-s)/(a,a), N(b,-s) = -N(-b,s)
      return -d->length2(s) / d->length2(a) * lookup(-b, s);
    }
    // N(a,b)/(s,s) = N(-s,a)/(b,b)
    return d->length2(s) / d->length2(b) * lookup(-s, a);
  }
};

void buildChevalley(RootDatum& d) {
  CarterTable tab{&d, {}};
  // composite positive roots in the fixed (height, lex) order
  for (int g = 1; g <= d.num_positive; ++g) {
    if (d.height(g) < 2) continue;
    std::vector<std::pair<int, int>> special;
    for (int a = 1; a <= d.num_positive; ++a) {
      for (int b = a + 1; b <= d.num_positive; ++b) {
        if (d.sum(a, b) == g) special.push_back({a, b});
      }
    }
    if (special.empty()) throw std::runtime_error("chevalley: composite root with no special pair");
    // extraspecial pair: minimal first component (the order is the root order)
    auto [a1, b1] = special.front();
    Rational n1 = Rational(rootStringDown(d, a1, b1) + 1);
    tab.pos[{a1, b1}] = n1;
    for (size_t k = 1; k < special.size(); ++k) {
      auto [a, b] = special[k];
      // Jacobi identity on (tau_{a1}, tau_{b1}, tau_{-b}) reduced to
      // previously known constants:
      //   N(a1,b1) N(g,-b) = N(b1,-b) N(a1, b1-b) - N(a1,-b) N(b1, a1-b)
      // and N(g,-b) = (a,a)/(g,g) N(a,b).
      Rational rhs = tab.lookup(b1, -b) * tab.lookup(a1, d.sum(b1, -b)) -
                     tab.lookup(a1, -b) * tab.lookup(b1, d.sum(a1, -b));
      Rational nab = rhs * d.length2(g) / (d.length2(a) * n1);
      int p = rootStringDown(d, a, b);
      if (abs(nab) != Rational(p + 1)) {
        throw std::runtime_error("chevalley: |N| != p+1 consistency failure");
      }
      tab.pos[{a, b}] = nab;
    }
  }
  // materialize the full signed tables
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    for (int b = -d.num_positive; b <= d.num_positive; ++b) {
      if (b == 0 || d.sum(a, b) == 0) continue;
      Rational nc = tab.lookup(a, b);
      if (isZero(nc)) continue;
      if (nc.get_den() != 1) throw std::runtime_error("chevalley: non-integral constant");
      d.n_table_carter[{a, b}] = nc;
      // tau twist: tau_a = eps(a) e_a with eps(a) = sign(a); this flips
      // N_{-a,-b} = -N_{ab} into the +N convention of the bracket table.
      RootIdx s = d.sum(a, b);
      int eps = (a > 0 ? 1 : -1) * (b > 0 ? 1 : -1) * (s > 0 ? 1 : -1);
      d.n_table[{a, b}] = Rational(eps) * nc;
    }
  }
}

}  // namespace

RootDatum buildRootSystem(char type, int rank) {
  RootDatum d;
  d.algebra_type = type;
  d.rank_l = rank;
  d.cartan = cartanMatrixOf(type, rank);
  d.sym_d = symmetrizers(d.cartan);

  // positive roots: closure of the simple roots under root strings
  std::set<std::vector<int>> roots;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> e(rank, 0);
    e[i] = 1;
    roots.insert(e);
  }
  auto isRootSoFar = [&](const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; }) && roots.count(v) > 0;
  };
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<int>> snapshot(roots.begin(), roots.end());
    for (const auto& b : snapshot) {
      for (int i = 0; i < rank; ++i) {
        // beta + alpha_i is a root iff p - <beta, H_i> > 0 with p the number
        // of steps the alpha_i-string through beta extends downwards
        int pairing = 0;
        for (int k = 0; k < rank; ++k) pairing += d.cartan[i][k] * b[k];
        int p = 0;
        std::vector<int> v = b;
        for (;;) {
          v[i] -= 1;
          if (!isRootSoFar(v)) break;
          ++p;
        }
        if (p - pairing > 0) {
          std::vector<int> up = b;
          up[i] += 1;
          if (roots.insert(up).second) grew = true;
        }
      }
    }
  }
  d.positive_roots.assign(roots.begin(), roots.end());
  std::sort(d.positive_roots.begin(), d.positive_roots.end(),
            [](const std::vector<int>& x, const std::vector<int>& y) {
              int hx = heightOf(x), hy = heightOf(y);
              if (hx != hy) return hx < hy;
              return x < y;
            });
  d.num_positive = static_cast<int>(d.positive_roots.size());

  // coroots: H_alpha = sum_i (c_i d_i / d_alpha) H_i
  for (int k = 0; k < d.num_positive; ++k) {
    const auto& c = d.positive_roots[k];
    Rational dalpha = d.bilinear(c, c) / 2;
    std::vector<int> co(rank);
    for (int i = 0; i < rank; ++i) {
      Rational v = Rational(c[i] * d.sym_d[i]) / dalpha;
      if (v.get_den() != 1) throw std::runtime_error("coroot coordinates not integral");
      co[i] = static_cast<int>(v.get_num().get_si());
    }
    d.coroots.push_back(co);
    // canonical normalization alpha(H_alpha) = 2
    Rational check(0);
    for (int i = 0; i < rank; ++i) check += d.rootOnCartan(k + 1, i) * Rational(co[i]);
    if (check != 2) throw std::runtime_error("alpha(H_alpha) != 2");
  }

  buildChevalley(d);
  verifyJacobi(d);
  return d;
}

Weight rho(const RootDatum& d) {
  Weight w;
  w.coords.assign(d.rank_l, Rational(1));
  return w;
}

bool isRegularDominant(const RootDatum& d, const Weight& chi) {
  if (chi.rank() != d.rank_l) return false;
  return std::all_of(chi.coords.begin(), chi.coords.end(),
                     [](const Rational& x) { return sgn(x) > 0; });
}

bool isDominantIntegral(const RootDatum& d, const Weight& lam) {
  if (lam.rank() != d.rank_l) return false;
  return std::all_of(lam.coords.begin(), lam.coords.end(), [](const Rational& x) {
    return sgn(x) >= 0 && x.get_den() == 1;
  });
}

bool isAdmissibleChi(const RootDatum& d, const Weight& chi) {
  if (chi.rank() != d.rank_l) return false;
  bool nonzero = false;
  for (const auto& x : chi.coords) {
    if (sgn(x) < 0) return false;
    if (sgn(x) > 0) nonzero = true;
  }
  return nonzero;
}

AnomalyCoefficients anomalyCoefficients(const RootDatum& d, const Weight& chi) {
  if (!isAdmissibleChi(d, chi)) {
    throw std::runtime_error("anomaly coefficients: chi not regular dominant");
  }
  Weight shifted = chi + rho(d) + rho(d);
  AnomalyCoefficients out;
  for (int k = 1; k <= d.num_positive; ++k) {
    Rational r = d.pair(shifted, k);
    if (sgn(r) <= 0) throw std::runtime_error("anomaly coefficient not positive");
    out.r.push_back(r);
  }
  return out;
}

namespace {

// element of the algebra in the tau basis: root part + Cartan part
struct Elt {
  std::map<RootIdx, Rational> tau;
  std::vector<Rational> h;

  explicit Elt(int l) : h(l, Rational(0)) {}
  bool isZero() const {
    for (const auto& [k, v] : tau)
      if (!brst::isZero(v)) return false;
    for (const auto& v : h)
      if (!brst::isZero(v)) return false;
    return true;
  }
  void addTau(RootIdx a, const Rational& c) { tau[a] += c; }
  void addH(const std::vector<int>& co, const Rational& c, int sign) {
    for (size_t i = 0; i < h.size(); ++i) h[i] += Rational(sign * co[i]) * c;
  }
  void sub(const Elt& o) {
    for (const auto& [k, v] : o.tau) tau[k] -= v;
    for (size_t i = 0; i < h.size(); ++i) h[i] -= o.h[i];
  }
};

Elt bracketBasis(const RootDatum& d, int a, int b) {
  // basis labels: 1..2m signed roots encoded, 0..l-1 Cartan; we pass
  // a,b as: root index != 0 for tau, or -(1000+i) never used. Simpler to
  // handle the four cases at the call site; here both are tau indices.
  Elt r(d.rank_l);
  RootIdx s = d.sum(a, b);
  if (s != 0) r.addTau(s, d.n(a, b));
  if (a == -b) {
    // [tau_a, tau_{-a}] = -H_a
    r.addH(d.coroots[std::abs(a) - 1], Rational(1), a > 0 ? -1 : 1);
  }
  return r;
}

Elt bracket(const RootDatum& d, const Elt& x, const Elt& y) {
  Elt r(d.rank_l);
  for (const auto& [a, ca] : x.tau) {
    for (const auto& [b, cb] : y.tau) {
      Elt br = bracketBasis(d, a, b);
      for (const auto& [k, v] : br.tau) r.tau[k] += ca * cb * v;
      for (int i = 0; i < d.rank_l; ++i) r.h[i] += ca * cb * br.h[i];
    }
    for (int i = 0; i < d.rank_l; ++i) {
      // [tau_a, H_i] = -a(H_i) tau_a
      if (!isZero(y.h[i])) r.tau[a] += ca * y.h[i] * (-d.rootOnCartan(a, i));
    }
  }
  for (int i = 0; i < d.rank_l; ++i) {
    if (isZero(x.h[i])) continue;
    for (const auto& [b, cb] : y.tau) r.tau[b] += x.h[i] * cb * d.rootOnCartan(b, i);
  }
  return r;
}

}  // namespace

void verifyJacobi(const RootDatum& d) {
  std::vector<Elt> basis;
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    Elt e(d.rank_l);
    e.addTau(a, Rational(1));
    basis.push_back(e);
  }
  for (int i = 0; i < d.rank_l; ++i) {
    Elt e(d.rank_l);
    e.h[i] = 1;
    basis.push_back(e);
  }
  int n = static_cast<int>(basis.size());
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      for (int z = y; z < n; ++z) {
        Elt t1 = bracket(d, basis[x], bracket(d, basis[y], basis[z]));
        Elt t2 = bracket(d, bracket(d, basis[x], basis[y]), basis[z]);
        Elt t3 = bracket(d, basis[y], bracket(d, basis[x], basis[z]));
        t1.sub(t2);
        t1.sub(t3);
        if (!t1.isZero()) throw std::runtime_error("Jacobi identity failure in bracket table");
      }
    }
  }
}

bool verifyCocycleIdentity(const RootDatum& d, const AnomalyCoefficients& r) {
  auto term = [&](RootIdx a, RootIdx b) -> Rational {
    RootIdx s = d.sum(a, b);
    if (s == 0) return Rational(0);
    Rational sign(s > 0 ? 1 : -1);
    return sign * r.of(s) * d.n(a, b);
  };
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    for (int b = -d.num_positive; b <= d.num_positive; ++b) {
      if (b == 0) continue;
      for (int c = -d.num_positive; c <= d.num_positive; ++c) {
        if (c == 0) continue;
        auto va = d.rootVec(a);
        auto vb = d.rootVec(b);
        auto vc = d.rootVec(c);
        bool zerosum = true;
        for (int i = 0; i < d.rank_l; ++i) {
          if (va[i] + vb[i] + vc[i] != 0) zerosum = false;
        }
        if (!zerosum) continue;
        if (term(a, b) != term(a, c) - term(b, c)) return false;
      }
    }
  }
  return true;
}

std::string RootDatum::toJson() const {
  nlohmann::ordered_json j;
  j["type"] = typeName();
  j["rank"] = rank_l;
  j["cartan_matrix"] = cartan;
  j["symmetrizers"] = sym_d;
  j["positive_roots"] = positive_roots;
  j["coroots"] = coroots;
  nlohmann::ordered_json nt = nlohmann::ordered_json::array();
  for (const auto& [key, v] : n_table) {
    nt.push_back({key.first, key.second, static_cast<long>(v.get_num().get_si())});
  }
  j["n_table"] = nt;
  j["n_sign_convention"] = "extraspecial-pairs-positive";
  return j.dump();
}

}  // namespace brst::roots
