#include "weightmodule.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace brst::rep {

using linalg::SparseMatrix;
using linalg::SparseVec;
using roots::RootDatum;
using roots::RootIdx;
using roots::Weight;

Integer weylDimension(const RootDatum& d, const Weight& lambda) {
  Weight lr = lambda + roots::rho(d);
  Rational num(1), den(1);
  for (int k = 1; k <= d.num_positive; ++k) {
    num *= d.pair(lr, k);
    den *= d.pair(roots::rho(d), k);
  }
  Rational dim = num / den;
  if (dim.get_den() != 1) throw std::runtime_error("weyl dimension not integral");
  return dim.get_num();
}

namespace {

// A word [i0, i1, ..., ik] denotes f_{i0} f_{i1} ... f_{ik} v_lambda.
using Word = std::vector<int>;
using LinComb = std::map<Word, Rational>;

struct VermaCalc {
  const RootDatum* d;
  Weight lambda;
  std::map<std::pair<int, Word>, LinComb> e_memo;
  std::map<std::pair<Word, Word>, Rational> s_memo;

  Weight weightOf(const Word& w) const {
    Weight mu = lambda;
    for (int i : w) mu = mu - d->simpleRootWeight(i);
    return mu;
  }

  // e_i applied to vec(w), as a combination of shorter words
  const LinComb& eApply(int i, const Word& w) {
    auto key = std::make_pair(i, w);
    auto it = e_memo.find(key);
    if (it != e_memo.end()) return it->second;
    LinComb out;
    if (!w.empty()) {
      int j = w.front();
      Word tail(w.begin() + 1, w.end());
      for (const auto& [u, c] : eApply(i, tail)) {
        Word ju;
        ju.reserve(u.size() + 1);
        ju.push_back(j);
        ju.insert(ju.end(), u.begin(), u.end());
        out[ju] += c;
      }
      if (i == j) {
        Weight mu = weightOf(tail);
        Rational h = mu.coords[i];  // <mu, H_i>
        if (!isZero(h)) out[tail] += h;
      }
      std::erase_if(out, [](const auto& p) { return isZero(p.second); });
    }
    return e_memo.emplace(key, std::move(out)).first->second;
  }

  // Shapovalov pairing (vec(u), vec(w)); zero across distinct weights
  Rational shap(const Word& u, const Word& w) {
    if (u.size() != w.size()) return Rational(0);
    if (u.empty()) return Rational(1);
    if (!(weightOf(u) == weightOf(w))) return Rational(0);
    auto key = std::make_pair(u, w);
    auto it = s_memo.find(key);
    if (it != s_memo.end()) return it->second;
    int j = u.front();
    Word tail(u.begin() + 1, u.end());
    Rational acc(0);
    for (const auto& [t, c] : eApply(j, w)) acc += c * shap(tail, t);
    s_memo.emplace(key, acc);
    return acc;
  }
};

}  // namespace

std::vector<int> WeightModule::weightSpace(const Weight& w) const {
  std::vector<int> idx;
  for (int k = 0; k < dim; ++k)
    if (weights[k] == w) idx.push_back(k);
  return idx;
}

SparseMatrix WeightModule::actionCoroot(RootIdx a) const {
  const auto& co = datum->coroots[std::abs(a) - 1];
  SparseMatrix h(dim, dim);
  for (int i = 0; i < datum->rank_l; ++i) {
    if (co[i] == 0) continue;
    h = linalg::add(h, linalg::scale(cartan_h[i], Rational(a > 0 ? co[i] : -co[i])));
  }
  return h;
}

WeightModule buildIrrep(const RootDatum& d, const Weight& lambda) {
  if (!roots::isDominantIntegral(d, lambda)) {
    throw std::runtime_error("buildIrrep: highest weight not dominant integral");
  }
  VermaCalc calc{&d, lambda, {}, {}};

  // Basis words grouped by weight, built level by level; linear dependence is
  // detected with the Shapovalov form, which quotients out the maximal
  // submodule.
  std::map<Weight, std::vector<Word>> basis_by_weight;
  std::map<Weight, SparseMatrix> gram_by_weight;
  std::vector<Word> level = {Word{}};
  basis_by_weight[lambda] = {Word{}};
  {
    SparseMatrix g(1, 1);
    g.set(0, 0, Rational(1));
    gram_by_weight[lambda] = g;
  }
  std::vector<std::pair<Weight, Word>> order = {{lambda, Word{}}};

  while (!level.empty()) {
    std::map<Weight, std::vector<Word>> cand;
    for (const auto& w : level) {
      for (int i = 0; i < d.rank_l; ++i) {
        Word iw;
        iw.reserve(w.size() + 1);
        iw.push_back(i);
        iw.insert(iw.end(), w.begin(), w.end());
        cand[calc.weightOf(iw)].push_back(iw);
      }
    }
    std::vector<Word> next;
    for (auto& [mu, words] : cand) {
      std::sort(words.begin(), words.end());
      words.erase(std::unique(words.begin(), words.end()), words.end());
      std::vector<Word> sel;
      std::vector<std::vector<Rational>> g;  // Gram of the selected words
      for (const auto& w : words) {
        std::vector<Rational> col(sel.size() + 1);
        for (size_t k = 0; k < sel.size(); ++k) col[k] = calc.shap(sel[k], w);
        col[sel.size()] = calc.shap(w, w);
        size_t n = sel.size() + 1;
        SparseMatrix test(static_cast<int>(n), static_cast<int>(n));
        for (size_t a = 0; a + 1 < n; ++a)
          for (size_t b = 0; b + 1 < n; ++b)
            if (!isZero(g[a][b])) test.set(static_cast<int>(a), static_cast<int>(b), g[a][b]);
        for (size_t a = 0; a < n; ++a) {
          if (!isZero(col[a])) {
            test.set(static_cast<int>(a), static_cast<int>(n - 1), col[a]);
            test.set(static_cast<int>(n - 1), static_cast<int>(a), col[a]);
          }
        }
        if (linalg::rank(test) == static_cast<int>(n)) {
          sel.push_back(w);
          for (size_t a = 0; a + 1 < n; ++a) g[a].push_back(col[a]);
          g.push_back(col);
        }
      }
      if (sel.empty()) continue;
      auto& dst = basis_by_weight[mu];
      if (!dst.empty()) throw std::runtime_error("buildIrrep: weight revisited across levels");
      dst = sel;
      SparseMatrix gm(static_cast<int>(sel.size()), static_cast<int>(sel.size()));
      for (size_t a = 0; a < sel.size(); ++a)
        for (size_t b = 0; b < sel.size(); ++b)
          if (!isZero(g[a][b])) gm.set(static_cast<int>(b), static_cast<int>(a), g[a][b]);
      gram_by_weight[mu] = gm;
      for (const auto& w : sel) order.push_back({mu, w});
      next.insert(next.end(), sel.begin(), sel.end());
    }
    level = std::move(next);
  }

  WeightModule m;
  m.datum = &d;
  m.highest_weight = lambda;
  m.dim = static_cast<int>(order.size());
  Integer expected = weylDimension(d, lambda);
  if (Integer(m.dim) != expected) {
    throw std::runtime_error("buildIrrep: dimension disagrees with the Weyl formula");
  }

  std::map<Weight, std::vector<int>> indices_by_weight;
  for (int k = 0; k < m.dim; ++k) {
    m.weights.push_back(order[k].first);
    indices_by_weight[order[k].first].push_back(k);
  }

  // expansion of an arbitrary word combination in the chosen basis
  auto expand = [&](const Weight& mu, const LinComb& x) -> SparseVec {
    SparseVec out;
    if (x.empty()) return out;
    auto it = basis_by_weight.find(mu);
    if (it == basis_by_weight.end()) return out;  // vanishes in the quotient
    const auto& bw = it->second;
    SparseVec rhs;
    for (size_t k = 0; k < bw.size(); ++k) {
      Rational v(0);
      for (const auto& [t, c] : x) v += c * calc.shap(bw[k], t);
      if (!isZero(v)) rhs.set(static_cast<int>(k), v);
    }
    auto sol = linalg::solve(gram_by_weight.at(mu), rhs);
    if (!sol) throw std::runtime_error("buildIrrep: Gram solve failed");
    const auto& idx = indices_by_weight.at(mu);
    for (const auto& [k, v] : sol->e) out.set(idx[k], v);
    return out;
  };

  std::vector<SparseMatrix> fmat(d.rank_l, SparseMatrix(m.dim, m.dim));
  std::vector<SparseMatrix> emat(d.rank_l, SparseMatrix(m.dim, m.dim));
  for (int k = 0; k < m.dim; ++k) {
    const Word& w = order[k].second;
    const Weight& mu = order[k].first;
    for (int i = 0; i < d.rank_l; ++i) {
      Word iw;
      iw.push_back(i);
      iw.insert(iw.end(), w.begin(), w.end());
      LinComb f_of_w;
      f_of_w[iw] = Rational(1);
      fmat[i].col[k] = expand(mu - d.simpleRootWeight(i), f_of_w);
      emat[i].col[k] = expand(mu + d.simpleRootWeight(i), calc.eApply(i, w));
    }
  }

  for (int i = 0; i < d.rank_l; ++i) {
    SparseMatrix h(m.dim, m.dim);
    for (int k = 0; k < m.dim; ++k) {
      Rational v = m.weights[k].coords[i];
      if (!isZero(v)) h.set(k, k, v);
    }
    m.cartan_h.push_back(h);
  }

  // tau basis: tau_{+i} = e_i and tau_{-i} = -f_i on simple roots, composite
  // roots by the bracket recursion through a fixed simple summand.
  auto simpleIndex = [&](int i) {
    std::vector<int> e(d.rank_l, 0);
    e[i] = 1;
    return d.indexOf(e);
  };
  for (int k = 1; k <= d.num_positive; ++k) {
    if (d.height(k) != 1) continue;
    const auto& v = d.positive_roots[k - 1];
    int i = static_cast<int>(std::find(v.begin(), v.end(), 1) - v.begin());
    m.tau[k] = emat[i];
    m.tau[-k] = linalg::scale(fmat[i], Rational(-1));
  }
  for (int k = 1; k <= d.num_positive; ++k) {
    if (d.height(k) == 1) continue;
    int i = -1;
    RootIdx rest = 0;
    for (int s = 0; s < d.rank_l; ++s) {
      auto v = d.positive_roots[k - 1];
      if (v[s] == 0) continue;
      v[s] -= 1;
      RootIdx r = d.indexOf(v);
      if (r > 0) {
        i = s;
        rest = r;
        break;
      }
    }
    if (i < 0) throw std::runtime_error("buildIrrep: composite root without simple summand");
    RootIdx si = simpleIndex(i);
    Rational nval = d.n(si, rest);
    m.tau[k] = linalg::scale(linalg::commutator(m.tau.at(si), m.tau.at(rest)), Rational(1) / nval);
    m.tau[-k] =
        linalg::scale(linalg::commutator(m.tau.at(-si), m.tau.at(-rest)), Rational(1) / nval);
  }

  m.gram = SparseMatrix(m.dim, m.dim);
  for (const auto& [mu, bw] : basis_by_weight) {
    const auto& idx = indices_by_weight.at(mu);
    const auto& g = gram_by_weight.at(mu);
    for (int a = 0; a < static_cast<int>(bw.size()); ++a)
      for (const auto& [b, v] : g.col[a].e) m.gram.set(idx[b], idx[a], v);
  }
  return m;
}

void verifyModule(const WeightModule& m) {
  const RootDatum& d = *m.datum;
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    for (int b = -d.num_positive; b <= d.num_positive; ++b) {
      if (b == 0) continue;
      SparseMatrix lhs = linalg::commutator(m.action(a), m.action(b));
      SparseMatrix rhs(m.dim, m.dim);
      RootIdx s = d.sum(a, b);
      if (s != 0) rhs = linalg::scale(m.action(s), d.n(a, b));
      if (a == -b) rhs = linalg::sub(rhs, m.actionCoroot(a));
      if (!(lhs == rhs)) throw std::runtime_error("module: bracket table violated");
    }
    for (int i = 0; i < d.rank_l; ++i) {
      SparseMatrix lhs = linalg::commutator(m.cartan_h[i], m.action(a));
      SparseMatrix rhs = linalg::scale(m.action(a), d.rootOnCartan(a, i));
      if (!(lhs == rhs)) throw std::runtime_error("module: Cartan bracket violated");
    }
  }
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    SparseMatrix lhs = linalg::mul(m.gram, m.action(a));
    SparseMatrix rhs = linalg::scale(linalg::mul(m.action(-a).transpose(), m.gram), Rational(-1));
    if (!(lhs == rhs)) throw std::runtime_error("module: conjugation rule violated");
  }
  for (int i = 0; i < d.rank_l; ++i) {
    SparseMatrix gh = linalg::mul(m.gram, m.cartan_h[i]);
    if (!gh.isSymmetric()) throw std::runtime_error("module: H not symmetric against the Gram");
  }
  if (!linalg::certifyPositiveDefinite(m.gram)) {
    throw std::runtime_error("module: Gram not positive definite");
  }
}

linalg::SparseMatrix ConstraintOperators::coroot(RootIdx a) const {
  const auto& d = *module->datum;
  const auto& co = d.coroots[std::abs(a) - 1];
  SparseMatrix h(module->dim, module->dim);
  for (int i = 0; i < d.rank_l; ++i) {
    if (co[i] == 0) continue;
    h = linalg::add(h, linalg::scale(l_cartan[i], Rational(a > 0 ? co[i] : -co[i])));
  }
  return h;
}

ConstraintOperators shiftedConstraints(const WeightModule& m, const Weight& chi,
                                       bool allow_any_chi) {
  const RootDatum& d = *m.datum;
  if (!allow_any_chi && !roots::isAdmissibleChi(d, chi)) {
    throw std::runtime_error("shiftedConstraints: chi not regular dominant");
  }
  ConstraintOperators ops;
  ops.module = &m;
  ops.chi = chi;
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    ops.l_root.emplace(a, m.action(a));
  }
  for (int i = 0; i < d.rank_l; ++i) {
    SparseMatrix shifted = m.cartan_h[i];
    Rational c = chi.coords[i];
    if (!isZero(c)) shifted = linalg::sub(shifted, linalg::scale(SparseMatrix::identity(m.dim), c));
    ops.l_cartan.push_back(shifted);
  }
  return ops;
}

void verifyConstraintAlgebra(const ConstraintOperators& ops) {
  const WeightModule& m = *ops.module;
  const RootDatum& d = *m.datum;
  for (int a = -d.num_positive; a <= d.num_positive; ++a) {
    if (a == 0) continue;
    for (int b = -d.num_positive; b <= d.num_positive; ++b) {
      if (b == 0) continue;
      SparseMatrix lhs = linalg::commutator(ops.root(a), ops.root(b));
      SparseMatrix rhs(m.dim, m.dim);
      RootIdx s = d.sum(a, b);
      if (s != 0) rhs = linalg::scale(ops.root(s), d.n(a, b));
      if (a == -b) {
        // -(L_{H_a} + <chi, H_a>)
        rhs = linalg::sub(rhs, ops.coroot(a));
        Rational central = d.pair(ops.chi, a);
        rhs = linalg::sub(rhs, linalg::scale(SparseMatrix::identity(m.dim), central));
      }
      if (!(lhs == rhs)) throw std::runtime_error("constraints: anomalous bracket violated");
    }
    for (int i = 0; i < d.rank_l; ++i) {
      SparseMatrix lhs = linalg::commutator(ops.l_cartan[i], ops.root(a));
      SparseMatrix rhs = linalg::scale(ops.root(a), d.rootOnCartan(a, i));
      if (!(lhs == rhs)) throw std::runtime_error("constraints: Cartan bracket violated");
    }
  }
}

linalg::SubspaceBasis guptaBleulerKernel(const ConstraintOperators& ops) {
  const WeightModule& m = *ops.module;
  const RootDatum& d = *m.datum;
  SparseMatrix stacked = ops.root(1);
  for (int a = 2; a <= d.num_positive; ++a) stacked = linalg::vcat(stacked, ops.root(a));
  for (int i = 0; i < d.rank_l; ++i) stacked = linalg::vcat(stacked, ops.l_cartan[i]);
  return linalg::nullspace(stacked);
}

std::string WeightModule::toJson(bool include_matrices) const {
  nlohmann::ordered_json j;
  j["highest_weight"] = nlohmann::ordered_json::array();
  for (const auto& c : highest_weight.coords) j["highest_weight"].push_back(ratString(c));
  j["dim"] = dim;
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (const auto& w : weights) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& c : w.coords) row.push_back(ratString(c));
    ws.push_back(row);
  }
  j["weights"] = ws;
  if (include_matrices) {
    nlohmann::ordered_json acts;
    for (const auto& [a, mat] : tau) acts[std::to_string(a)] = mat.toCsv();
    j["action_csv"] = acts;
    j["gram_csv"] = gram.toCsv();
  }
  return j.dump();
}

}  // namespace brst::rep
