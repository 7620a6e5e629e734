#pragma once

// Levi subgroups M = GL_{r_1} x ... x GL_{r_k}, their cocycle, M^{(n)} and Weyl twists.

#include "mcover/cover.hpp"

namespace mcover {

using Blocks = std::vector<MatQ>;

inline void check_blocks(const Blocks& m, const LeviShape& shape) {
  if (static_cast<int>(m.size()) != shape.k()) throw domain_error("block count differs from the partition");
  for (int i = 0; i < shape.k(); ++i)
    if (m[i].r() != shape.partition[i]) throw domain_error("block " + std::to_string(i + 1) + " has the wrong size");
}

inline MatQ block_embed(const Blocks& m, const LeviShape& shape) {
  check_blocks(m, shape);
  MatQ out(shape.r());
  for (int b = 0; b < shape.k(); ++b) {
    int o = shape.offset(b);
    for (int i = 0; i < shape.partition[b]; ++i)
      for (int j = 0; j < shape.partition[b]; ++j) out(o + i, o + j) = m[b](i, j);
  }
  return out;
}

/// Block formula: prod sigma_{r_i}(g_i, g_i') * prod_{i<j} (det g_i, det g_j') * prod_{i!=j} (det g_i, det g_j')^c.
inline MuN levi_cocycle(const Blocks& m, const Blocks& m2, const LeviShape& shape) {
  check_blocks(m, shape);
  check_blocks(m2, shape);
  MuN acc = MuN::identity(shape.n);
  std::vector<Rat> d(shape.k()), d2(shape.k());
  for (int i = 0; i < shape.k(); ++i) {
    acc *= sigma(m[i], m2[i], shape.block_params(i));
    d[i] = m[i].det();
    d2[i] = m2[i].det();
  }
  for (int i = 0; i < shape.k(); ++i)
    for (int j = 0; j < shape.k(); ++j) {
      if (i == j) continue;
      MuN s = symbol(shape.backend, d[i], d2[j]);
      acc *= s.pow((i < j ? 1 : 0) + shape.c);
    }
  return acc;
}

/// m in M^{(n)}: every block determinant is an n-th power.
inline bool in_Mn(const Blocks& m, const LeviShape& shape) {
  check_blocks(m, shape);
  for (const auto& g : m)
    if (!shape.backend.is_nth_power(g.det())) return false;
  return true;
}

/// iota_i(a) = diag(a, 1, ..., 1) of size r_i.
inline MatQ iota(int ri, const Rat& a) {
  MatQ m = MatQ::identity(ri);
  m(0, 0) = a;
  return m;
}

struct CosetDecomposition {
  Blocks rep;  // iota_i(det(g_i)^{1-n})
  Blocks mn;   // g_i iota_i(det(g_i)^{n-1}), determinant det(g_i)^n
};

/// m = mn * rep blockwise, mn in M^{(n)} at every place.
inline CosetDecomposition coset_decompose(const Blocks& m, const LeviShape& shape) {
  check_blocks(m, shape);
  CosetDecomposition out;
  for (int i = 0; i < shape.k(); ++i) {
    Rat d = m[i].det();
    out.mn.push_back(m[i] * iota(shape.partition[i], d.pow(shape.n - 1)));
    out.rep.push_back(iota(shape.partition[i], d.pow(1 - shape.n)));
  }
  return out;
}

struct BlockPerm {
  std::vector<int> sigma;  // 0-based permutation of the k blocks
  LeviShape shape;

  BlockPerm(std::vector<int> s, LeviShape sh) : sigma(std::move(s)), shape(std::move(sh)) {
    if (static_cast<int>(sigma.size()) != shape.k() || !is_permutation(sigma))
      throw domain_error("block permutation does not match the number of blocks");
  }
  /// Point permutation of W: perm[col] = row of the 1 in that column.
  std::vector<int> point_permutation() const {
    std::vector<int> perm(shape.r());
    int row = 0;
    for (int i = 0; i < shape.k(); ++i) {
      int src = sigma[i];
      int col = shape.offset(src);
      for (int t = 0; t < shape.partition[src]; ++t) perm[col + t] = row++;
    }
    return perm;
  }
  /// Shape of w m w^{-1}.
  LeviShape target_shape() const {
    LeviShape out = shape;
    for (int i = 0; i < shape.k(); ++i) out.partition[i] = shape.partition[sigma[i]];
    return out;
  }
};

struct WeylBlockElement {
  MatQ w;
  EtaElement eta_w;
  MatQ t_w;
};

/// w with w diag(g_1..g_k) w^{-1} = diag(g_{sigma(1)}..g_{sigma(k)}), and w = t_w eta_w.
inline WeylBlockElement weyl_block_element(const BlockPerm& bp) {
  auto perm = bp.point_permutation();
  MatQ w(bp.shape.r());
  for (int j = 0; j < bp.shape.r(); ++j) w(perm[j], j) = 1;
  EtaElement eta = eta_from_perm(perm);
  MatQ t = w * eta.inverse_matrix();
  if (!t.is_diagonal()) throw std::logic_error("w eta_w^{-1} is not diagonal");
  return {w, eta, t};
}

/// sigma(w, m w^{-1}) sigma(m, w^{-1}) / sigma(w, w^{-1}), the obstruction to
/// (w,1)(m,1)(w,1)^{-1} = (w m w^{-1}, 1).
inline MuN phi_w(const Blocks& m, const BlockPerm& bp) {
  if (!in_Mn(m, bp.shape)) throw domain_error("phi_w is only defined on M^{(n)}");
  CocycleParams params = bp.shape.params();
  MatQ w = weyl_block_element(bp).w;
  MatQ wi = w.inverse();
  MatQ mm = block_embed(m, bp.shape);
  return sigma(w, mm * wi, params) * sigma(mm, wi, params) / sigma(w, wi, params);
}

/// (det delta, det a)^{1+2c}; delta lives in the first block.
inline MuN omega_delta_factor(const MatQ& delta, const Blocks& a, const LeviShape& shape) {
  if (delta.r() != shape.partition.front()) throw domain_error("delta must have the size of the first block");
  Rat da = block_embed(a, shape).det();
  return symbol(shape.backend, delta.det(), da).pow(1 + 2L * shape.c);
}

}  // namespace mcover
