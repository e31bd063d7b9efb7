#pragma once

// Finite-dimensional representations of a quiver over GF(p), morphisms
// between them, Hom spaces and duality.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "qflag/fp_matrix.hpp"
#include "qflag/quiver.hpp"
#include "qflag/subspace.hpp"

namespace qflag {

class Representation {
public:
  Representation() = default;

  /// maps[k] is the matrix of arrow k, of shape dim(target) x dim(source).
  Representation(QuiverPtr quiver, Elem p, DimVector dim, std::vector<FpMatrix> maps)
      : quiver_(std::move(quiver)), p_(p), dim_(std::move(dim)), maps_(std::move(maps))
  {
    if (!quiver_)
      throw Error("representation without quiver");
    if (!is_prime(p_))
      throw Error("modulus " + std::to_string(p_) + " is not prime");
    quiver_->check_dim(dim_);
    if (!dim_.is_nonnegative())
      throw Error("negative dimension vector " + dim_.to_string());
    if (maps_.size() != quiver_->arrow_count())
      throw Error("expected " + std::to_string(quiver_->arrow_count()) + " arrow matrices, got " +
                  std::to_string(maps_.size()));
    for (std::size_t k = 0; k < maps_.size(); ++k) {
      const Arrow &a = quiver_->arrow(k);
      const FpMatrix &m = maps_[k];
      if (m.p() != p_ || m.rows() != static_cast<std::size_t>(dim_[a.target]) ||
          m.cols() != static_cast<std::size_t>(dim_[a.source]))
        throw Error("matrix of arrow '" + a.id + "' has shape " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " + std::to_string(dim_[a.target]) +
                    "x" + std::to_string(dim_[a.source]) + " over GF(" + std::to_string(p_) + ")");
    }
  }

  static Representation zero(QuiverPtr q, Elem p, DimVector dim)
  {
    std::vector<FpMatrix> maps;
    for (auto const &a : q->arrows())
      maps.emplace_back(p, dim[a.target], dim[a.source]);
    return Representation(std::move(q), p, std::move(dim), std::move(maps));
  }

  static Representation zero(QuiverPtr q, Elem p)
  {
    DimVector d = q->zero();
    return zero(std::move(q), p, std::move(d));
  }

  /// S_i: k at vertex i, zero elsewhere.
  static Representation simple(QuiverPtr q, Elem p, std::size_t i)
  {
    DimVector d = q->simple_root(i);
    return zero(std::move(q), p, std::move(d));
  }

  const Quiver &quiver() const { return *quiver_; }
  const QuiverPtr &quiver_ptr() const { return quiver_; }
  Elem p() const { return p_; }
  const DimVector &dim() const { return dim_; }
  std::size_t dim_at(std::size_t i) const { return static_cast<std::size_t>(dim_[i]); }
  long long total_dim() const { return dim_.total(); }
  bool is_zero() const { return dim_.is_zero(); }
  const FpMatrix &map(std::size_t arrow) const { return maps_.at(arrow); }
  const std::vector<FpMatrix> &maps() const { return maps_; }

  /// Whether the per-vertex subspaces are closed under every arrow.
  bool is_subrepresentation(const std::vector<Subspace> &sub) const
  {
    check_subspaces(sub);
    for (std::size_t k = 0; k < maps_.size(); ++k) {
      const Arrow &a = quiver_->arrow(k);
      if (sub[a.source].dim() == 0)
        continue;
      if (!sub[a.target].contains(maps_[k] * sub[a.source].basis().transpose()))
        return false;
    }
    return true;
  }

  /// The subrepresentation on `sub`, in the stored echelon bases.
  Representation restrict_to(const std::vector<Subspace> &sub) const
  {
    check_subspaces(sub);
    DimVector d(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i)
      d[i] = static_cast<long long>(sub[i].dim());
    std::vector<FpMatrix> maps;
    for (std::size_t k = 0; k < maps_.size(); ++k) {
      const Arrow &a = quiver_->arrow(k);
      const Subspace &src = sub[a.source], &tgt = sub[a.target];
      if (src.dim() == 0) {
        maps.emplace_back(p_, tgt.dim(), 0);
        continue;
      }
      FpMatrix images = maps_[k] * src.basis().transpose();
      if (!tgt.contains(images))
        throw Error("subspaces are not closed under arrow '" + a.id + "'");
      maps.push_back(tgt.coordinates(images));
    }
    return Representation(quiver_, p_, std::move(d), std::move(maps));
  }

  /// M / U with each M_i / U_i identified with the span of the non-pivot
  /// standard basis vectors of U_i.
  Representation quotient(const std::vector<Subspace> &sub) const
  {
    if (!is_subrepresentation(sub))
      throw Error("quotient by subspaces that do not form a subrepresentation");
    DimVector d(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i)
      d[i] = dim_[i] - static_cast<long long>(sub[i].dim());
    std::vector<FpMatrix> maps;
    for (std::size_t k = 0; k < maps_.size(); ++k) {
      const Arrow &a = quiver_->arrow(k);
      // columns of M_alpha at the complement indices of the source
      std::vector<std::size_t> src_comp = sub[a.source].complement_indices();
      FpMatrix cols(p_, dim_at(a.target), src_comp.size());
      for (std::size_t c = 0; c < src_comp.size(); ++c)
        for (std::size_t r = 0; r < dim_at(a.target); ++r)
          cols(r, c) = maps_[k](r, src_comp[c]);
      maps.push_back(sub[a.target].quotient_coordinates(cols));
    }
    return Representation(quiver_, p_, std::move(d), std::move(maps));
  }

  /// g . M with M_alpha replaced by g_j M_alpha g_i^{-1}; every g_i must be invertible.
  Representation transformed(const std::vector<FpMatrix> &g) const
  {
    if (g.size() != quiver_->vertex_count())
      throw Error("base change needs one matrix per vertex");
    std::vector<FpMatrix> inv;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i].rows() != dim_at(i) || g[i].cols() != dim_at(i))
        throw Error("base change matrix has wrong shape at vertex " + std::to_string(i));
      inv.push_back(inverse(g[i]));
    }
    std::vector<FpMatrix> maps;
    for (std::size_t k = 0; k < maps_.size(); ++k) {
      const Arrow &a = quiver_->arrow(k);
      maps.push_back(g[a.target] * maps_[k] * inv[a.source]);
    }
    return Representation(quiver_, p_, dim_, std::move(maps));
  }

  /// Rebinds to an equal quiver object, so that results of reflection
  /// round trips share the caller's quiver pointer.
  Representation with_quiver(QuiverPtr q) const
  {
    if (!q || !(*q == *quiver_))
      throw InternalError("rebinding a representation to a different quiver");
    return Representation(std::move(q), p_, dim_, maps_);
  }

  friend bool operator==(const Representation &a, const Representation &b)
  {
    return *a.quiver_ == *b.quiver_ && a.p_ == b.p_ && a.dim_ == b.dim_ && a.maps_ == b.maps_;
  }

private:
  void check_subspaces(const std::vector<Subspace> &sub) const
  {
    if (sub.size() != quiver_->vertex_count())
      throw Error("need one subspace per vertex");
    for (std::size_t i = 0; i < sub.size(); ++i)
      if (sub[i].ambient() != dim_at(i) || sub[i].p() != p_)
        throw Error("subspace at vertex " + std::to_string(i) + " has the wrong ambient space");
  }

  QuiverPtr quiver_;
  Elem p_ = 2;
  DimVector dim_;
  std::vector<FpMatrix> maps_;
};

inline void check_compatible(const Representation &m, const Representation &n)
{
  if (!(m.quiver() == n.quiver()))
    throw Error("representations live on different quivers");
  if (m.p() != n.p())
    throw Error("representations over different fields: GF(" + std::to_string(m.p()) +
                ") vs GF(" + std::to_string(n.p()) + ")");
}

inline Representation direct_sum(const std::vector<Representation> &parts)
{
  if (parts.empty())
    throw Error("direct sum of an empty list");
  const Representation &first = parts.front();
  DimVector d = first.quiver().zero();
  for (auto const &r : parts) {
    check_compatible(first, r);
    d += r.dim();
  }
  const Quiver &q = first.quiver();
  std::vector<FpMatrix> maps;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow &a = q.arrow(k);
    FpMatrix m(first.p(), d[a.target], d[a.source]);
    std::size_t r0 = 0, c0 = 0;
    for (auto const &r : parts) {
      const FpMatrix &b = r.map(k);
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
          m(r0 + i, c0 + j) = b(i, j);
      r0 += b.rows();
      c0 += b.cols();
    }
    maps.push_back(std::move(m));
  }
  return Representation(first.quiver_ptr(), first.p(), std::move(d), std::move(maps));
}

/// f: M -> N given by one matrix per vertex.
struct Morphism {
  std::vector<FpMatrix> components; // components[i] : dim N_i x dim M_i

  /// f_j M_alpha = N_alpha f_i for every arrow alpha: i -> j.
  bool commutes(const Representation &m, const Representation &n) const
  {
    const Quiver &q = m.quiver();
    if (components.size() != q.vertex_count())
      return false;
    for (std::size_t k = 0; k < q.arrow_count(); ++k) {
      const Arrow &a = q.arrow(k);
      if (!(components[a.target] * m.map(k) == n.map(k) * components[a.source]))
        return false;
    }
    return true;
  }
};

namespace detail {

/// The linear system { f_j M_alpha - N_alpha f_i = 0 } on the entries of f;
/// unknowns are ordered vertex by vertex, row-major within each block.
inline FpMatrix hom_system(const Representation &m, const Representation &n,
                           std::vector<std::size_t> *offsets_out = nullptr)
{
  check_compatible(m, n);
  const Quiver &q = m.quiver();
  const Elem p = m.p();
  std::vector<std::size_t> offset(q.vertex_count() + 1, 0);
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    offset[i + 1] = offset[i] + n.dim_at(i) * m.dim_at(i);
  std::size_t eqs = 0;
  for (auto const &a : q.arrows())
    eqs += n.dim_at(a.target) * m.dim_at(a.source);

  FpMatrix sys(p, eqs, offset.back());
  std::size_t row = 0;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow &a = q.arrow(k);
    const std::size_t i = a.source, j = a.target;
    const FpMatrix &ma = m.map(k), &na = n.map(k);
    const std::size_t mi = m.dim_at(i), mj = m.dim_at(j), ni = n.dim_at(i), nj = n.dim_at(j);
    for (std::size_t r = 0; r < nj; ++r)
      for (std::size_t c = 0; c < mi; ++c, ++row) {
        // (f_j M_alpha)[r,c] = sum_t f_j[r,t] M_alpha[t,c]
        for (std::size_t t = 0; t < mj; ++t)
          sys(row, offset[j] + r * mj + t) =
              mod_add(sys(row, offset[j] + r * mj + t), ma(t, c), p);
        // -(N_alpha f_i)[r,c] = -sum_t N_alpha[r,t] f_i[t,c]
        for (std::size_t t = 0; t < ni; ++t)
          sys(row, offset[i] + t * mi + c) =
              mod_sub(sys(row, offset[i] + t * mi + c), na(r, t), p);
      }
  }
  if (offsets_out)
    *offsets_out = std::move(offset);
  return sys;
}

} // namespace detail

/// [M, N] = dim Hom(M, N).
inline std::size_t hom_dim(const Representation &m, const Representation &n)
{
  FpMatrix sys = detail::hom_system(m, n);
  return sys.cols() - rank(sys);
}

/// A basis of Hom(M, N).
inline std::vector<Morphism> hom_basis(const Representation &m, const Representation &n)
{
  std::vector<std::size_t> offset;
  FpMatrix sys = detail::hom_system(m, n, &offset);
  FpMatrix ker = rank_kernel(sys).kernel;
  const Quiver &q = m.quiver();
  std::vector<Morphism> out;
  for (std::size_t b = 0; b < ker.cols(); ++b) {
    Morphism f;
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
      FpMatrix c(m.p(), n.dim_at(i), m.dim_at(i));
      for (std::size_t r = 0; r < c.rows(); ++r)
        for (std::size_t s = 0; s < c.cols(); ++s)
          c(r, s) = ker(offset[i] + r * c.cols() + s, b);
      f.components.push_back(std::move(c));
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// [M, N]^1 = dim Ext^1(M, N), from [M, N] - [M, N]^1 = <dim M, dim N>
/// (path algebras are hereditary).
inline long long ext_dim(const Representation &m, const Representation &n)
{
  return static_cast<long long>(hom_dim(m, n)) - euler_form(m.quiver(), m.dim(), n.dim());
}

/// The dual representation over the opposite quiver: (DM)_{alpha*} = (M_alpha)^T.
inline Representation dualize(const Representation &m)
{
  std::vector<FpMatrix> maps;
  for (auto const &a : m.maps())
    maps.push_back(a.transpose());
  return Representation(make_quiver(m.quiver().opposite()), m.p(), m.dim(), std::move(maps));
}

/// The stacked map phi_a : (+)_{alpha: j -> a} M_j -> M_a, blocks in arrow order.
inline FpMatrix sink_map(const Representation &m, std::size_t a)
{
  const Quiver &q = m.quiver();
  FpMatrix phi(m.p(), m.dim_at(a), 0);
  for (std::size_t k : q.incoming(a))
    phi = FpMatrix::hstack(phi, m.map(k));
  return phi;
}

/// dim Hom(M, S_a) = d_a - rank phi_a for a sink a.
inline std::size_t hom_to_simple_at_sink(const Representation &m, std::size_t a)
{
  if (!m.quiver().is_sink(a))
    throw Error("vertex " + std::to_string(m.quiver().label(a)) + " is not a sink");
  return m.dim_at(a) - rank(sink_map(m, a));
}

/// A representation with uniformly random arrow matrices.
template <typename Rng>
Representation random_representation(QuiverPtr q, Elem p, DimVector d, Rng &rng)
{
  std::uniform_int_distribution<Elem> dist(0, p - 1);
  std::vector<FpMatrix> maps;
  for (auto const &a : q->arrows()) {
    FpMatrix m(p, d[a.target], d[a.source]);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        m(r, c) = dist(rng);
    maps.push_back(std::move(m));
  }
  return Representation(std::move(q), p, std::move(d), std::move(maps));
}

/// A uniformly random invertible matrix (rejection sampling).
template <typename Rng>
FpMatrix random_invertible(Elem p, std::size_t n, Rng &rng)
{
  std::uniform_int_distribution<Elem> dist(0, p - 1);
  while (true) {
    FpMatrix m(p, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        m(r, c) = dist(rng);
    if (rank(m) == n)
      return m;
  }
}

} // namespace qflag
