#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "qflag/io.hpp"
#include "qflag/representation.hpp"

namespace gen {

using namespace qflag;

using Rng = std::mt19937_64;

inline Rng rng(std::uint64_t seed) { return Rng(seed * 0x9E3779B97F4A7C15ull + 17); }

inline long long uniform(Rng &r, long long lo, long long hi)
{
  return std::uniform_int_distribution<long long>(lo, hi)(r);
}

inline FpMatrix matrix(Rng &r, Elem p, std::size_t rows, std::size_t cols)
{
  FpMatrix m(p, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = static_cast<Elem>(uniform(r, 0, p - 1));
  return m;
}

/// Random matrix of rank at most k (product of rows x k and k x cols).
inline FpMatrix low_rank(Rng &r, Elem p, std::size_t rows, std::size_t cols, std::size_t k)
{
  return matrix(r, p, rows, k) * matrix(r, p, k, cols);
}

inline DimVector dim(Rng &r, const Quiver &q, long long max_entry)
{
  DimVector d(q.vertex_count());
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = uniform(r, 0, max_entry);
  return d;
}

/// Random representation; with probability 1/2 each map is forced to low rank
/// so that degenerate orbits show up.
inline Representation rep(Rng &r, const QuiverPtr &q, Elem p, const DimVector &d)
{
  std::vector<FpMatrix> maps;
  for (auto const &a : q->arrows()) {
    const std::size_t rows = d[a.target], cols = d[a.source];
    if (uniform(r, 0, 1) == 0 && rows > 0 && cols > 0)
      maps.push_back(low_rank(r, p, rows, cols, static_cast<std::size_t>(uniform(r, 0, 1))));
    else
      maps.push_back(matrix(r, p, rows, cols));
  }
  return Representation(q, p, d, std::move(maps));
}

inline Representation rep(Rng &r, const QuiverPtr &q, Elem p, long long max_entry)
{
  return rep(r, q, p, dim(r, *q, max_entry));
}

/// Random filtration of `top` with nu steps (weakly increasing, possibly repeated terms).
inline Filtration filtration(Rng &r, const DimVector &top, std::size_t nu)
{
  std::vector<DimVector> levels(nu + 1, DimVector(top.size()));
  levels[nu] = top;
  for (std::size_t i = 0; i < top.size(); ++i) {
    std::vector<long long> cuts;
    for (std::size_t k = 1; k < nu; ++k)
      cuts.push_back(uniform(r, 0, top[i]));
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 1; k < nu; ++k)
      levels[k][i] = cuts[k - 1];
  }
  return Filtration(std::move(levels));
}

inline std::vector<QuiverPtr> dynkin_quivers()
{
  return {fixture_quiver("a1"), fixture_quiver("a2"), fixture_quiver("a3"), fixture_quiver("d4")};
}

/// A2 with the arrow reversed and A3 with a source in the middle, to catch
/// orientation assumptions.
inline QuiverPtr a2_reversed() { return make_quiver(Quiver({1, 2}, {{"alpha", 2, 1}})); }
inline QuiverPtr a3_source_middle()
{
  return make_quiver(Quiver({1, 2, 3}, {{"alpha", 2, 1}, {"beta", 2, 3}}));
}

} // namespace gen
