#pragma once

// Exact-integer square matrices with determinant, permanent and the
// term-by-term expansion of the Leibniz formula.

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace strongl {

class SignedMatrix {
 public:
  SignedMatrix() = default;
  explicit SignedMatrix(int n);
  SignedMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  int size() const noexcept { return n_; }
  long long& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  long long operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  // Drops the listed rows and the same-numbered columns.
  SignedMatrix principal_minor_without(const std::vector<int>& drop) const;

  // Row/column i corresponds to vertex ordering[i] (empty when not built from a tree).
  std::vector<int> ordering;

  friend bool operator==(const SignedMatrix& x, const SignedMatrix& y) {
    return x.n_ == y.n_ && x.a_ == y.a_;
  }

 private:
  int n_ = 0;
  std::vector<long long> a_;
};

// Fraction-free Gaussian elimination.  The empty matrix has determinant 1.
long long determinant(const SignedMatrix& m);

// Permanent of the entrywise absolute value.  Throws SizeLimit for n > 30.
long long permanent_abs(const SignedMatrix& m);
// Ryser inclusion-exclusion with Gray-code column subsets.
long long permanent_abs_ryser(const SignedMatrix& m);
// Row expansion memoised on the set of used columns; fast on sparse input.
long long permanent_abs_sparse(const SignedMatrix& m);

struct ExpansionSignatures {
  long long positives = 0;
  long long negatives = 0;
  long long zeros = 0;
};

// Signs of sgn(p) * prod_i a[i][p(i)] over all n! permutations.  n <= 9.
ExpansionSignatures expansion_signatures(const SignedMatrix& m);

enum class Effectiveness { Effective, NotEffective, Indeterminate };

const char* to_string(Effectiveness e) noexcept;

// All non-zero expansion terms share one sign.  Up to n = 9 by enumeration;
// above that through permanent_abs == |det| when det != 0.
Effectiveness is_effective(const SignedMatrix& m);

}  // namespace strongl
