#include "linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace brst::linalg {

void SparseVec::set(int i, const Rational& v) {
  auto it = std::lower_bound(e.begin(), e.end(), i,
                             [](const auto& p, int k) { return p.first < k; });
  if (it != e.end() && it->first == i) {
    if (isZero(v)) {
      e.erase(it);
    } else {
      it->second = v;
    }
  } else if (!isZero(v)) {
    e.insert(it, {i, v});
  }
}

Rational SparseVec::get(int i) const {
  auto it = std::lower_bound(e.begin(), e.end(), i,
                             [](const auto& p, int k) { return p.first < k; });
  if (it != e.end() && it->first == i) return it->second;
  return Rational(0);
}

void SparseVec::scale(const Rational& s) {
  if (isZero(s)) {
    e.clear();
    return;
  }
  for (auto& p : e) p.second *= s;
}

SparseVec SparseVec::scaled(const Rational& s) const {
  SparseVec r = *this;
  r.scale(s);
  return r;
}

void SparseVec::axpy(const Rational& s, const SparseVec& other) {
  if (isZero(s) || other.e.empty()) return;
  std::vector<std::pair<int, Rational>> out;
  out.reserve(e.size() + other.e.size());
  size_t i = 0, j = 0;
  while (i < e.size() || j < other.e.size()) {
    if (j == other.e.size() || (i < e.size() && e[i].first < other.e[j].first)) {
      out.push_back(e[i++]);
    } else if (i == e.size() || other.e[j].first < e[i].first) {
      Rational v = s * other.e[j].second;
      if (!isZero(v)) out.push_back({other.e[j].first, v});
      ++j;
    } else {
      Rational v = e[i].second + s * other.e[j].second;
      if (!isZero(v)) out.push_back({e[i].first, v});
      ++i;
      ++j;
    }
  }
  e = std::move(out);
}

Rational dot(const SparseVec& a, const SparseVec& b) {
  Rational r(0);
  size_t i = 0, j = 0;
  while (i < a.e.size() && j < b.e.size()) {
    if (a.e[i].first < b.e[j].first) {
      ++i;
    } else if (b.e[j].first < a.e[i].first) {
      ++j;
    } else {
      r += a.e[i].second * b.e[j].second;
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec unitVec(int i) {
  SparseVec v;
  v.e.push_back({i, Rational(1)});
  return v;
}

long SparseMatrix::nnz() const {
  long n = 0;
  for (const auto& c : col) n += c.nnz();
  return n;
}

bool SparseMatrix::isZero() const {
  for (const auto& c : col)
    if (!c.empty()) return false;
  return true;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, Rational(1));
  return m;
}

SparseMatrix SparseMatrix::fromColumns(int rows, const std::vector<SparseVec>& cs) {
  SparseMatrix m(rows, static_cast<int>(cs.size()));
  m.col = cs;
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols, rows);
  for (int j = 0; j < cols; ++j)
    for (const auto& [i, v] : col[j].e) t.col[i].e.push_back({j, v});
  return t;  // entries pushed in increasing j per row, already sorted
}

bool SparseMatrix::isSymmetric() const {
  if (rows != cols) return false;
  return *this == transpose();
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows == o.rows && cols == o.cols && col == o.col;
}

std::string SparseMatrix::toCsv() const {
  std::ostringstream os;
  os << "row,col,num,den\n";
  for (int j = 0; j < cols; ++j)
    for (const auto& [i, v] : col[j].e)
      os << i << "," << j << "," << numString(v) << "," << denString(v) << "\n";
  return os.str();
}

SparseVec mul(const SparseMatrix& m, const SparseVec& v) {
  SparseVec r;
  for (const auto& [j, x] : v.e) r.axpy(x, m.col[j]);
  return r;
}

SparseMatrix mul(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw std::runtime_error("mul: dimension mismatch");
  SparseMatrix r(a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) r.col[j] = mul(a, b.col[j]);
  return r;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::runtime_error("add: dimension mismatch");
  SparseMatrix r = a;
  for (int j = 0; j < b.cols; ++j) r.col[j].axpy(Rational(1), b.col[j]);
  return r;
}

SparseMatrix sub(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::runtime_error("sub: dimension mismatch");
  SparseMatrix r = a;
  for (int j = 0; j < b.cols; ++j) r.col[j].axpy(Rational(-1), b.col[j]);
  return r;
}

SparseMatrix scale(const SparseMatrix& a, const Rational& s) {
  SparseMatrix r = a;
  for (auto& c : r.col) c.scale(s);
  return r;
}

SparseMatrix hcat(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows) throw std::runtime_error("hcat: row mismatch");
  SparseMatrix r = a;
  r.cols += b.cols;
  r.col.insert(r.col.end(), b.col.begin(), b.col.end());
  return r;
}

SparseMatrix vcat(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.cols) throw std::runtime_error("vcat: col mismatch");
  SparseMatrix r(a.rows + b.rows, a.cols);
  for (int j = 0; j < a.cols; ++j) {
    r.col[j] = a.col[j];
    for (const auto& [i, v] : b.col[j].e) r.col[j].e.push_back({i + a.rows, v});
  }
  return r;
}

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) {
  return sub(mul(a, b), mul(b, a));
}

SparseMatrix anticommutator(const SparseMatrix& a, const SparseMatrix& b) {
  return add(mul(a, b), mul(b, a));
}

// ---------------------------------------------------------------------------
// Elimination core.
//
// Rows are kept as primitive integer sparse vectors. An elimination step is a
// fraction-free cross-multiplication  r' = p_c * r - r_c * p  followed by a
// content reduction, so intermediate entries stay integral and gcd-bounded.
// Columns are swept in their natural (lexicographic) order; within a column
// the pivot row is the sparsest candidate, ties broken by original row index.
// The whole procedure is deterministic.
// ---------------------------------------------------------------------------

namespace {

struct IntRow {
  std::vector<std::pair<int, Integer>> e;  // sorted by column, no zeros
  int orig = 0;

  const Integer* at(int c) const {
    auto it = std::lower_bound(e.begin(), e.end(), c,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != e.end() && it->first == c) return &it->second;
    return nullptr;
  }
};

void contentReduce(IntRow& r) {
  if (r.e.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : r.e) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(r.e.front().second) < 0) g = -g;
  if (g != 1) {
    for (auto& [c, v] : r.e) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

IntRow integerRow(const SparseVec& v, int orig) {
  IntRow r;
  r.orig = orig;
  if (v.e.empty()) return r;
  Integer l = 1;
  for (const auto& [c, x] : v.e) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  for (const auto& [c, x] : v.e) {
    Integer n = x.get_num() * (l / x.get_den());
    r.e.push_back({c, n});
  }
  contentReduce(r);
  return r;
}

// r := pval * r - rval * pivot, content-reduced.
void eliminateRow(IntRow& r, const IntRow& pivot, const Integer& pval, const Integer& rval) {
  std::vector<std::pair<int, Integer>> out;
  out.reserve(r.e.size() + pivot.e.size());
  size_t i = 0, j = 0;
  while (i < r.e.size() || j < pivot.e.size()) {
    if (j == pivot.e.size() || (i < r.e.size() && r.e[i].first < pivot.e[j].first)) {
      out.push_back({r.e[i].first, pval * r.e[i].second});
      ++i;
    } else if (i == r.e.size() || pivot.e[j].first < r.e[i].first) {
      out.push_back({pivot.e[j].first, -rval * pivot.e[j].second});
      ++j;
    } else {
      Integer v = pval * r.e[i].second - rval * pivot.e[j].second;
      if (sgn(v) != 0) out.push_back({r.e[i].first, std::move(v)});
      ++i;
      ++j;
    }
  }
  r.e = std::move(out);
  contentReduce(r);
}

struct Echelon {
  int cols = 0;
  std::vector<IntRow> rows;      // pivot columns strictly increasing
  std::vector<int> pivot_cols;   // one per echelon row
};

Echelon echelonOfRows(std::vector<IntRow> work, int cols) {
  Echelon ech;
  ech.cols = cols;
  std::erase_if(work, [](const IntRow& r) { return r.e.empty(); });
  for (int c = 0; c < cols && !work.empty(); ++c) {
    int best = -1;
    for (int k = 0; k < static_cast<int>(work.size()); ++k) {
      if (work[k].e.front().first != c) continue;
      if (best < 0 || work[k].e.size() < work[best].e.size() ||
          (work[k].e.size() == work[best].e.size() && work[k].orig < work[best].orig)) {
        best = k;
      }
    }
    if (best < 0) continue;
    IntRow pivot = std::move(work[best]);
    work.erase(work.begin() + best);
    Integer pval = pivot.e.front().second;
    for (auto& r : work) {
      if (r.e.front().first == c) {
        Integer rval = r.e.front().second;
        eliminateRow(r, pivot, pval, rval);
      }
    }
    std::erase_if(work, [](const IntRow& r) { return r.e.empty(); });
    ech.pivot_cols.push_back(c);
    ech.rows.push_back(std::move(pivot));
  }
  return ech;
}

Echelon echelonOf(const SparseMatrix& m) {
  SparseMatrix t = m.transpose();
  std::vector<IntRow> rows;
  rows.reserve(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    IntRow r = integerRow(t.col[i], i);
    if (!r.e.empty()) rows.push_back(std::move(r));
  }
  return echelonOfRows(std::move(rows), m.cols);
}

}  // namespace

EliminationOptions& eliminationOptions() {
  static EliminationOptions opts;
  return opts;
}

// --- deterministic 62-bit prime ---------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool isPrime64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

std::uint64_t modularPrime(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (;;) {
    std::uint64_t c = (splitmix64(state) >> 2) | (1ULL << 61) | 1ULL;  // odd, 62-bit
    if (isPrime64(c)) return c;
  }
}

std::optional<std::uint64_t> rankModP(const SparseMatrix& m, std::uint64_t p) {
  // rows as uint64 residues
  struct Row {
    std::vector<std::pair<int, std::uint64_t>> e;
  };
  SparseMatrix t = m.transpose();
  std::vector<Row> rows;
  rows.reserve(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    Row r;
    for (const auto& [c, v] : t.col[i].e) {
      Integer den = v.get_den();
      if (mpz_divisible_ui_p(den.get_mpz_t(), p)) return std::nullopt;  // unlucky prime
      std::uint64_t dn = mpz_fdiv_ui(den.get_mpz_t(), p);
      std::uint64_t nm = mpz_fdiv_ui(v.get_num().get_mpz_t(), p);
      std::uint64_t val = mulmod(nm, powmod(dn, p - 2, p), p);
      if (val) r.e.push_back({c, val});
    }
    if (!r.e.empty()) rows.push_back(std::move(r));
  }
  std::uint64_t rank = 0;
  for (int c = 0; c < m.cols && !rows.empty(); ++c) {
    int best = -1;
    for (int k = 0; k < static_cast<int>(rows.size()); ++k) {
      if (rows[k].e.front().first == c &&
          (best < 0 || rows[k].e.size() < rows[best].e.size())) {
        best = k;
      }
    }
    if (best < 0) continue;
    Row pivot = std::move(rows[best]);
    rows.erase(rows.begin() + best);
    std::uint64_t pinv = powmod(pivot.e.front().second, p - 2, p);
    for (auto& r : rows) {
      if (r.e.front().first != c) continue;
      std::uint64_t f = mulmod(r.e.front().second, pinv, p);
      // r -= f * pivot
      std::vector<std::pair<int, std::uint64_t>> out;
      size_t i = 0, j = 0;
      while (i < r.e.size() || j < pivot.e.size()) {
        if (j == pivot.e.size() || (i < r.e.size() && r.e[i].first < pivot.e[j].first)) {
          out.push_back(r.e[i++]);
        } else if (i == r.e.size() || pivot.e[j].first < r.e[i].first) {
          std::uint64_t v = p - mulmod(f, pivot.e[j].second, p);
          if (v != p && v != 0) out.push_back({pivot.e[j].first, v});
          ++j;
        } else {
          std::uint64_t v = (r.e[i].second + p - mulmod(f, pivot.e[j].second, p)) % p;
          if (v) out.push_back({r.e[i].first, v});
          ++i;
          ++j;
        }
      }
      r.e = std::move(out);
    }
    std::erase_if(rows, [](const Row& r) { return r.e.empty(); });
    ++rank;
  }
  return rank;
}

int rank(const SparseMatrix& m) {
  const auto& opts = eliminationOptions();
  std::optional<std::uint64_t> modular;
  if (opts.modular_prepass && std::min(m.rows, m.cols) >= opts.modular_threshold) {
    modular = rankModP(m, modularPrime(opts.prime_seed));
  }
  Echelon ech = echelonOf(m);
  int r = static_cast<int>(ech.rows.size());
  if (modular && static_cast<int>(*modular) > r) {
    throw std::runtime_error("rank: modular pre-pass exceeds exact rank (internal error)");
  }
  return r;
}

namespace {

// Back-substitution over the echelon rows: free columns zero, pivot columns
// solved so that rows . x = rhs(row).
SparseVec backSubstitute(const Echelon& ech, const std::vector<Rational>* rhs) {
  SparseVec x;
  for (int k = static_cast<int>(ech.rows.size()) - 1; k >= 0; --k) {
    const IntRow& row = ech.rows[k];
    int pc = ech.pivot_cols[k];
    Rational acc = rhs ? (*rhs)[k] : Rational(0);
    Rational pivot;
    for (const auto& [c, v] : row.e) {
      Rational rv(v);
      if (c == pc) {
        pivot = rv;
      } else {
        Rational xc = x.get(c);
        if (!isZero(xc)) acc -= rv * xc;
      }
    }
    Rational val = acc / pivot;
    if (!isZero(val)) x.set(pc, val);
  }
  return x;
}

// Scale to coprime integer entries with positive leading entry.
void normalizePrimitive(SparseVec& v) {
  if (v.e.empty()) return;
  Integer l = 1;
  for (const auto& [i, x] : v.e) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  Integer g = 0;
  for (const auto& [i, x] : v.e) {
    Integer n = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  v.scale(Rational(l) / Rational(g));
  if (sgn(v.e.front().second) < 0) v.scale(Rational(-1));
}

}  // namespace

SubspaceBasis nullspace(const SparseMatrix& m) {
  Echelon ech = echelonOf(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : ech.pivot_cols) is_pivot[c] = true;
  SubspaceBasis basis;
  basis.ambient = m.cols;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    // start from x[f] = 1 and solve pivot entries; rows with pivot > f see
    // only zero free entries beyond f, the loop handles the general case.
    SparseVec x;
    x.set(f, Rational(1));
    for (int k = static_cast<int>(ech.rows.size()) - 1; k >= 0; --k) {
      const IntRow& row = ech.rows[k];
      int pc = ech.pivot_cols[k];
      if (pc > f) continue;
      Rational acc(0);
      Rational pivot;
      for (const auto& [c, v] : row.e) {
        if (c == pc) {
          pivot = Rational(v);
        } else {
          Rational xc = x.get(c);
          if (!isZero(xc)) acc -= Rational(v) * xc;
        }
      }
      Rational val = acc / pivot;
      if (!isZero(val)) x.set(pc, val);
    }
    normalizePrimitive(x);
    basis.vecs.push_back(std::move(x));
  }
  return basis;
}

SubspaceBasis intersect(const SubspaceBasis& b1, const SubspaceBasis& b2) {
  if (b1.ambient != b2.ambient) {
    throw std::runtime_error("intersect: ambient dimension mismatch");
  }
  SparseMatrix stacked = hcat(b1.asMatrix(), scale(b2.asMatrix(), Rational(-1)));
  SubspaceBasis ker = nullspace(stacked);
  SubspaceBasis out;
  out.ambient = b1.ambient;
  SparseMatrix m1 = b1.asMatrix();
  for (const auto& k : ker.vecs) {
    SparseVec coeffs;
    for (const auto& [i, v] : k.e) {
      if (i < b1.dim()) coeffs.set(i, v);
    }
    SparseVec w = mul(m1, coeffs);
    normalizePrimitive(w);
    if (!w.empty()) out.vecs.push_back(std::move(w));
  }
  return out;
}

bool certifyPositiveDefinite(const SparseMatrix& g) {
  if (!g.isSymmetric()) throw std::runtime_error("certifyPositiveDefinite: matrix not symmetric");
  int n = g.rows;
  if (n == 0) return true;
  // Integerize by the congruence D G D with D = diag(row denominator lcms);
  // leading principal minors keep their signs.
  std::vector<Integer> d(n, 1);
  for (int j = 0; j < g.cols; ++j) {
    for (const auto& [i, v] : g.col[j].e) {
      mpz_lcm(d[i].get_mpz_t(), d[i].get_mpz_t(), v.get_den().get_mpz_t());
    }
  }
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n, Integer(0)));
  for (int j = 0; j < g.cols; ++j) {
    for (const auto& [i, v] : g.col[j].e) {
      Rational scaled = v * Rational(d[i]) * Rational(d[j]);
      a[i][j] = scaled.get_num();
    }
  }
  // Dense fraction-free (Bareiss) elimination without pivoting: the (k,k)
  // entry after step k-1 equals the k-th leading principal minor.
  Integer prev = 1;
  for (int k = 0; k < n; ++k) {
    if (sgn(a[k][k]) <= 0) return false;
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Integer num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return true;
}

std::optional<SparseVec> solve(const SparseMatrix& a, const SparseVec& b) {
  if (!b.e.empty() && b.e.back().first >= a.rows) {
    throw std::runtime_error("solve: rhs dimension mismatch");
  }
  // Augmented rows (A_i | b_i), eliminating only the first a.cols columns.
  SparseMatrix t = a.transpose();
  std::vector<IntRow> rows;
  int bcol = a.cols;
  for (int i = 0; i < a.rows; ++i) {
    SparseVec r = t.col[i];
    Rational bi = b.get(i);
    if (!isZero(bi)) r.set(bcol, bi);
    IntRow ir = integerRow(r, i);
    if (!ir.e.empty()) rows.push_back(std::move(ir));
  }
  // The sweep only pivots on columns < a.cols; rows left supported on the
  // augmented column alone signal inconsistency, caught by the final
  // verification below.
  Echelon ech = echelonOfRows(std::move(rows), a.cols);
  std::vector<Rational> rhs(ech.rows.size());
  for (size_t k = 0; k < ech.rows.size(); ++k) {
    const Integer* v = ech.rows[k].at(bcol);
    rhs[k] = v ? Rational(*v) : Rational(0);
    // strip the augmented column from the row for back-substitution
  }
  Echelon stripped;
  stripped.cols = a.cols;
  stripped.pivot_cols = ech.pivot_cols;
  stripped.rows.reserve(ech.rows.size());
  for (auto& r : ech.rows) {
    IntRow s;
    s.orig = r.orig;
    for (auto& [c, v] : r.e) {
      if (c < a.cols) s.e.push_back({c, v});
    }
    stripped.rows.push_back(std::move(s));
  }
  SparseVec x = backSubstitute(stripped, &rhs);
  // verify (also covers the inconsistent case)
  SparseVec check = mul(a, x);
  check.axpy(Rational(-1), b);
  if (!check.empty()) return std::nullopt;
  return x;
}

std::optional<SparseMatrix> solve(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix x(a.cols, b.cols);
  for (int j = 0; j < b.cols; ++j) {
    auto xs = solve(a, b.col[j]);
    if (!xs) return std::nullopt;
    x.col[j] = std::move(*xs);
  }
  return x;
}

bool IncrementalSpan::add(SparseVec v) {
  while (!v.e.empty()) {
    int lead = v.e.front().first;
    auto it = rows.find(lead);
    if (it == rows.end()) {
      v.scale(Rational(1) / v.e.front().second);
      rows.emplace(lead, std::move(v));
      return true;
    }
    v.axpy(-v.e.front().second, it->second);
  }
  return false;
}

bool IncrementalSpan::contains(SparseVec v) const {
  while (!v.e.empty()) {
    int lead = v.e.front().first;
    auto it = rows.find(lead);
    if (it == rows.end()) return false;
    v.axpy(-v.e.front().second, it->second);
  }
  return true;
}

bool inSpan(const SparseMatrix& a, const SparseVec& v) {
  SparseMatrix aug = a;
  aug.cols += 1;
  aug.col.push_back(v);
  return rank(aug) == rank(a);
}

bool sameSpan(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows) return false;
  int ra = rank(a);
  int rb = rank(b);
  if (ra != rb) return false;
  return rank(hcat(a, b)) == ra;
}

}  // namespace brst::linalg
