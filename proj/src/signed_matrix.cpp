#include "strongl/signed_matrix.hpp"

#include <cstdlib>
#include <unordered_map>

#include "strongl/error.hpp"

namespace strongl {

namespace {

long long checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorCode::SizeLimit, "integer overflow");
  return static_cast<long long>(v);
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

SignedMatrix::SignedMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}

SignedMatrix::SignedMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : SignedMatrix(static_cast<int>(rows.size())) {
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw Error(ErrorCode::MalformedRecord, "matrix is not square");
    int j = 0;
    for (long long x : row) (*this)(i, j++) = x;
    ++i;
  }
}

SignedMatrix SignedMatrix::principal_minor_without(const std::vector<int>& drop) const {
  std::vector<int> keep;
  for (int i = 0; i < n_; ++i) {
    bool dropped = false;
    for (int d : drop) dropped = dropped || d == i;
    if (!dropped) keep.push_back(i);
  }
  SignedMatrix out(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      out(static_cast<int>(i), static_cast<int>(j)) = (*this)(keep[i], keep[j]);
    }
    if (!ordering.empty()) out.ordering.push_back(ordering[static_cast<std::size_t>(keep[i])]);
  }
  return out;
}

long long determinant(const SignedMatrix& m) {
  const int n = m.size();
  if (n == 0) return 1;
  std::vector<__int128> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = m(i, j);
  const auto at = [&](int i, int j) -> __int128& { return a[static_cast<std::size_t>(i * n + j)]; };
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int pivot = k + 1;
      while (pivot < n && at(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        // Bareiss: the division is exact.
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        checked(at(i, j));
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return checked(sign * at(n - 1, n - 1));
}

long long permanent_abs_ryser(const SignedMatrix& m) {
  const int n = m.size();
  if (n > 30) throw Error(ErrorCode::SizeLimit, "permanent limited to 30 rows");
  if (n == 0) return 1;
  std::vector<__int128> row_sum(static_cast<std::size_t>(n), 0);
  __int128 total = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int j = __builtin_ctzll(k);
    const std::uint64_t next = gray ^ (std::uint64_t{1} << j);
    const bool added = (next >> j) & 1;
    gray = next;
    __int128 prod = 1;
    for (int i = 0; i < n; ++i) {
      auto& s = row_sum[static_cast<std::size_t>(i)];
      s += added ? std::llabs(m(i, j)) : -std::llabs(m(i, j));
      prod *= s;
    }
    const int size = __builtin_popcountll(gray);
    total += ((n - size) % 2 == 0) ? prod : -prod;
  }
  return checked(total);
}

long long permanent_abs_sparse(const SignedMatrix& m) {
  const int n = m.size();
  if (n > 30) throw Error(ErrorCode::SizeLimit, "permanent limited to 30 rows");
  std::unordered_map<std::uint32_t, __int128> states{{0u, 1}};
  for (int i = 0; i < n; ++i) {
    std::unordered_map<std::uint32_t, __int128> next;
    for (const auto& [used, count] : states) {
      for (int j = 0; j < n; ++j) {
        const long long x = std::llabs(m(i, j));
        if (x == 0 || (used >> j) & 1u) continue;
        next[used | (1u << j)] += count * x;
      }
    }
    states.swap(next);
    if (states.empty()) return 0;
  }
  __int128 total = 0;
  for (const auto& [used, count] : states) total += count;
  return checked(total);
}

long long permanent_abs(const SignedMatrix& m) {
  const int n = m.size();
  if (n > 30) throw Error(ErrorCode::SizeLimit, "permanent limited to 30 rows");
  long long nonzero = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) nonzero += m(i, j) != 0;
  // Tree matrices carry at most 3n - 2 entries; row expansion stays tiny there.
  return nonzero <= 3LL * n ? permanent_abs_sparse(m) : permanent_abs_ryser(m);
}

ExpansionSignatures expansion_signatures(const SignedMatrix& m) {
  const int n = m.size();
  if (n > 9) throw Error(ErrorCode::SizeLimit, "expansion enumeration limited to 9 rows");
  ExpansionSignatures sig;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::uint32_t used = 0;
  // Depth-first over permutations, skipping zero entries; `odd` tracks inversions.
  const auto walk = [&](auto&& self, int row, long long prod, bool odd) -> void {
    if (row == n) {
      const long long term = odd ? -prod : prod;
      if (term > 0) ++sig.positives;
      if (term < 0) ++sig.negatives;
      return;
    }
    for (int j = 0; j < n; ++j) {
      if ((used >> j) & 1u || m(row, j) == 0) continue;
      const int inversions = __builtin_popcount(used >> (j + 1));
      used |= 1u << j;
      self(self, row + 1, prod * m(row, j), odd != (inversions % 2 == 1));
      used &= ~(1u << j);
    }
  };
  walk(walk, 0, 1, false);
  sig.zeros = factorial(n) - sig.positives - sig.negatives;
  return sig;
}

const char* to_string(Effectiveness e) noexcept {
  switch (e) {
    case Effectiveness::Effective: return "effective";
    case Effectiveness::NotEffective: return "not_effective";
    case Effectiveness::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Effectiveness is_effective(const SignedMatrix& m) {
  if (m.size() <= 9) {
    const auto sig = expansion_signatures(m);
    return (sig.positives == 0 || sig.negatives == 0) ? Effectiveness::Effective : Effectiveness::NotEffective;
  }
  const long long det = determinant(m);
  if (det == 0) return Effectiveness::Indeterminate;
  return permanent_abs(m) == std::llabs(det) ? Effectiveness::Effective : Effectiveness::NotEffective;
}

}  // namespace strongl
