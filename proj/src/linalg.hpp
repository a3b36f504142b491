#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace brst::linalg {

// Sparse vector: entries sorted by index, no explicit zeros stored.
struct SparseVec {
  std::vector<std::pair<int, Rational>> e;

  bool empty() const { return e.empty(); }
  int nnz() const { return static_cast<int>(e.size()); }

  void set(int i, const Rational& v);
  Rational get(int i) const;
  void scale(const Rational& s);
  // this += s * other
  void axpy(const Rational& s, const SparseVec& other);
  SparseVec scaled(const Rational& s) const;
  bool operator==(const SparseVec& o) const { return e == o.e; }
};

Rational dot(const SparseVec& a, const SparseVec& b);
SparseVec unitVec(int i);

// Sparse matrix stored column-major: col[j] holds column j.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVec> col;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}

  void set(int i, int j, const Rational& v) { col[j].set(i, v); }
  Rational get(int i, int j) const { return col[j].get(i); }
  long nnz() const;
  bool isZero() const;

  static SparseMatrix identity(int n);
  static SparseMatrix fromColumns(int rows, const std::vector<SparseVec>& cs);
  SparseMatrix transpose() const;
  bool isSymmetric() const;
  bool operator==(const SparseMatrix& o) const;

  // CSV dump, header `row,col,num,den`, entries in column-major order.
  std::string toCsv() const;
};

SparseVec mul(const SparseMatrix& m, const SparseVec& v);
SparseMatrix mul(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix sub(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix scale(const SparseMatrix& a, const Rational& s);
SparseMatrix hcat(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix vcat(const SparseMatrix& a, const SparseMatrix& b);
// a*b - b*a  and  a*b + b*a
SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix anticommutator(const SparseMatrix& a, const SparseMatrix& b);

// Basis of a subspace of Q^ambient, stored as independent sparse columns.
struct SubspaceBasis {
  int ambient = 0;
  std::vector<SparseVec> vecs;

  int dim() const { return static_cast<int>(vecs.size()); }
  SparseMatrix asMatrix() const { return SparseMatrix::fromColumns(ambient, vecs); }
};

// Options for the elimination core. The modular pre-pass computes the rank
// modulo a deterministic 62-bit prime first; the exact elimination always runs
// and is what gets reported, the modular value is cross-checked against it.
struct EliminationOptions {
  bool modular_prepass = true;
  int modular_threshold = 48;  // skip the pre-pass for tiny matrices
  std::uint64_t prime_seed = 0x5DEECE66DULL;
};

EliminationOptions& eliminationOptions();
std::uint64_t modularPrime(std::uint64_t seed);

int rank(const SparseMatrix& m);
SubspaceBasis nullspace(const SparseMatrix& m);
SubspaceBasis intersect(const SubspaceBasis& b1, const SubspaceBasis& b2);
// Exact test via leading principal minors (dense fraction-free elimination).
bool certifyPositiveDefinite(const SparseMatrix& g);

// Exact solve A x = b; nullopt if inconsistent. When the system is
// underdetermined the solution with free variables set to zero is returned.
std::optional<SparseVec> solve(const SparseMatrix& a, const SparseVec& b);
// Column-wise solve A X = B.
std::optional<SparseMatrix> solve(const SparseMatrix& a, const SparseMatrix& b);

// rank([A | v]) == rank(A)?
bool inSpan(const SparseMatrix& a, const SparseVec& v);
bool sameSpan(const SparseMatrix& a, const SparseMatrix& b);

std::optional<std::uint64_t> rankModP(const SparseMatrix& m, std::uint64_t p);

// Growing echelon span for incremental membership / closure computations.
struct IncrementalSpan {
  std::map<int, SparseVec> rows;  // leading index -> reduced row

  // reduce v against the span; if a nonzero remainder survives, absorb it
  // and return true
  bool add(SparseVec v);
  bool contains(SparseVec v) const;
  int dim() const { return static_cast<int>(rows.size()); }
};

}  // namespace brst::linalg
