#pragma once

// Square matrices over Q, signed permutations in SL_r, and Bruhat cells.

#include "mcover/arith.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace mcover {

class MatQ {
 public:
  MatQ() = default;
  explicit MatQ(int r) : r_(r), a_(static_cast<std::size_t>(r) * r) {
    if (r < 1) throw domain_error("matrix dimension must be positive");
  }
  MatQ(int r, std::vector<Rat> entries) : r_(r), a_(std::move(entries)) {
    if (r < 1 || a_.size() != static_cast<std::size_t>(r) * r) throw domain_error("matrix entry count does not match dimension");
  }
  /// Builds from rows; throws unless square.
  static MatQ from_rows(const std::vector<std::vector<Rat>>& rows) {
    int r = static_cast<int>(rows.size());
    MatQ m(r);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != r) throw domain_error("matrix is not square");
      for (int j = 0; j < r; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static MatQ identity(int r) {
    MatQ m(r);
    for (int i = 0; i < r; ++i) m(i, i) = 1;
    return m;
  }
  static MatQ diag(const std::vector<Rat>& d) {
    MatQ m(static_cast<int>(d.size()));
    for (int i = 0; i < m.r_; ++i) m(i, i) = d[i];
    return m;
  }
  static MatQ scalar(int r, const Rat& a) { return diag(std::vector<Rat>(r, a)); }
  /// I + c*E_{ij}
  static MatQ elementary(int r, int i, int j, const Rat& c) {
    MatQ m = identity(r);
    m(i, j) += c;
    return m;
  }

  int r() const { return r_; }
  Rat& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * r_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * r_ + j]; }
  const std::vector<Rat>& entries() const { return a_; }

  MatQ operator*(const MatQ& o) const {
    if (o.r_ != r_) throw domain_error("matrix dimension mismatch");
    MatQ out(r_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < r_; ++k) {
        const Rat& x = (*this)(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < r_; ++j)
          if (!o(k, j).is_zero()) out(i, j) += x * o(k, j);
      }
    return out;
  }

  MatQ transpose() const {
    MatQ out(r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Rat det() const {
    MatQ m = *this;
    Rat d = 1;
    for (int c = 0; c < r_; ++c) {
      int piv = c;
      while (piv < r_ && m(piv, c).is_zero()) ++piv;
      if (piv == r_) return Rat(0);
      if (piv != c) {
        for (int j = 0; j < r_; ++j) std::swap(m(piv, j), m(c, j));
        d = -d;
      }
      d *= m(c, c);
      Rat inv = m(c, c).inverse();
      for (int i = c + 1; i < r_; ++i) {
        if (m(i, c).is_zero()) continue;
        Rat f = m(i, c) * inv;
        for (int j = c; j < r_; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return d;
  }

  MatQ inverse() const {
    MatQ m = *this, inv = identity(r_);
    for (int c = 0; c < r_; ++c) {
      int piv = c;
      while (piv < r_ && m(piv, c).is_zero()) ++piv;
      if (piv == r_) throw domain_error("matrix is singular");
      if (piv != c)
        for (int j = 0; j < r_; ++j) {
          std::swap(m(piv, j), m(c, j));
          std::swap(inv(piv, j), inv(c, j));
        }
      Rat s = m(c, c).inverse();
      for (int j = 0; j < r_; ++j) {
        m(c, j) *= s;
        inv(c, j) *= s;
      }
      for (int i = 0; i < r_; ++i) {
        if (i == c || m(i, c).is_zero()) continue;
        Rat f = m(i, c);
        for (int j = 0; j < r_; ++j) {
          m(i, j) -= f * m(c, j);
          inv(i, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  bool is_diagonal() const {
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }
  bool is_upper_unitriangular() const {
    for (int i = 0; i < r_; ++i) {
      if (!(*this)(i, i).is_one()) return false;
      for (int j = 0; j < i; ++j)
        if (!(*this)(i, j).is_zero()) return false;
    }
    return true;
  }
  bool is_identity() const { return *this == identity(r_); }
  std::vector<Rat> diagonal() const {
    std::vector<Rat> d(r_);
    for (int i = 0; i < r_; ++i) d[i] = (*this)(i, i);
    return d;
  }

  /// Canonical string, used as a memo key and in messages.
  std::string key() const {
    std::string s = "[";
    for (int i = 0; i < r_; ++i) {
      s += i ? ",[" : "[";
      for (int j = 0; j < r_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
      s += "]";
    }
    return s + "]";
  }

  friend bool operator==(const MatQ& a, const MatQ& b) { return a.r_ == b.r_ && a.a_ == b.a_; }

 private:
  int r_ = 0;
  std::vector<Rat> a_;
};

// ---------------------------------------------------------------------------
// Signed permutations eta = w_{a1} ... w_{al}, with w_i = [[0,-1],[1,0]] at (i,i+1).

struct EtaElement {
  std::vector<int> perm;   // eta e_j = signs[j] * e_{perm[j]}
  std::vector<int> signs;  // entries in {+1,-1}
  std::vector<int> word;   // 0-based simple reflection indices, reduced

  int r() const { return static_cast<int>(perm.size()); }
  int length() const { return static_cast<int>(word.size()); }

  MatQ matrix() const {
    MatQ m(r());
    for (int j = 0; j < r(); ++j) m(perm[j], j) = signs[j];
    return m;
  }
  MatQ inverse_matrix() const { return matrix().transpose(); }
};

/// Matrix of the simple reflection w_i (0-based i, acting on e_i, e_{i+1}).
inline MatQ simple_reflection(int r, int i) {
  MatQ m = MatQ::identity(r);
  m(i, i) = 0;
  m(i + 1, i + 1) = 0;
  m(i, i + 1) = -1;
  m(i + 1, i) = 1;
  return m;
}

inline int permutation_length(const std::vector<int>& perm) {
  int len = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++len;
  return len;
}

inline bool is_permutation(const std::vector<int>& perm) {
  std::vector<int> s = perm;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != static_cast<int>(i)) return false;
  return true;
}

/// Lexicographically least reduced word for perm (perm[j] = image of j),
/// with the element of the Tits section built along that word.
inline EtaElement eta_from_perm(const std::vector<int>& perm) {
  if (perm.empty() || !is_permutation(perm)) throw domain_error("not a permutation");
  const int r = static_cast<int>(perm.size());
  std::vector<int> cur = perm, word;
  auto inv_of = [&](const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) q[p[j]] = static_cast<int>(j);
    return q;
  };
  while (true) {
    auto q = inv_of(cur);
    int i = 0;
    while (i + 1 < r && q[i] < q[i + 1]) ++i;
    if (i + 1 >= r) break;
    word.push_back(i);
    for (int& x : cur) {
      if (x == i) x = i + 1;
      else if (x == i + 1) x = i;
    }
  }
  // Signs: right-multiply generator by generator, tracking columns.
  EtaElement eta{std::vector<int>(r), std::vector<int>(r, 1), word};
  std::iota(eta.perm.begin(), eta.perm.end(), 0);
  for (int i : word) {
    // (M w_i) e_i = M e_{i+1};  (M w_i) e_{i+1} = -M e_i
    std::swap(eta.perm[i], eta.perm[i + 1]);
    std::swap(eta.signs[i], eta.signs[i + 1]);
    eta.signs[i + 1] = -eta.signs[i + 1];
  }
  return eta;
}

/// The permutation of a monomial matrix (perm[j] = row of the nonzero in column j).
inline std::vector<int> monomial_permutation(const MatQ& m) {
  std::vector<int> perm(m.r(), -1);
  for (int j = 0; j < m.r(); ++j)
    for (int i = 0; i < m.r(); ++i)
      if (!m(i, j).is_zero()) {
        if (perm[j] >= 0) throw domain_error("matrix is not monomial");
        perm[j] = i;
      }
  if (!is_permutation(perm)) throw domain_error("matrix is not monomial");
  return perm;
}

struct BruhatForm {
  MatQ n1;
  MatQ t;  // diagonal
  EtaElement eta;
  MatQ n2;

  MatQ assemble() const { return n1 * t * eta.matrix() * n2; }
};

/// g = n1 t eta n2 with n1, n2 upper unitriangular, t diagonal, eta in the Tits section.
inline BruhatForm bruhat(const MatQ& g) {
  const int r = g.r();
  MatQ a = g, n1 = MatQ::identity(r), n2 = MatQ::identity(r);
  std::vector<int> perm(r, -1);
  std::vector<bool> used(r, false);
  for (int j = 0; j < r; ++j) {
    int piv = -1;
    for (int i = r - 1; i >= 0; --i)
      if (!used[i] && !a(i, j).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) throw domain_error("bruhat: matrix is singular");
    used[piv] = true;
    perm[j] = piv;
    Rat pinv = a(piv, j).inverse();
    for (int i = 0; i < piv; ++i) {
      if (a(i, j).is_zero()) continue;
      Rat c = a(i, j) * pinv;
      for (int k = 0; k < r; ++k)
        if (!a(piv, k).is_zero()) a(i, k) -= c * a(piv, k);
      for (int k = 0; k < r; ++k)
        if (!n1(k, i).is_zero()) n1(k, piv) += c * n1(k, i);
    }
    for (int k = j + 1; k < r; ++k) {
      if (a(piv, k).is_zero()) continue;
      Rat c = a(piv, k) * pinv;
      a(piv, k) = 0;
      for (int m = 0; m < r; ++m)
        if (!n2(k, m).is_zero()) n2(j, m) += c * n2(k, m);
    }
  }
  EtaElement eta = eta_from_perm(perm);
  std::vector<Rat> t(r);
  for (int j = 0; j < r; ++j) t[perm[j]] = a(perm[j], j) / Rat(eta.signs[j]);
  return {n1, MatQ::diag(t), eta, n2};
}

inline MatQ torus_part(const MatQ& g) { return bruhat(g).t; }

}  // namespace mcover
