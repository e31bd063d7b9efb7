#pragma once

// Batch verification runs over small corpora: mod-q counting, Hall algebra
// structure, the q = 0 comparison, the fiber formula, Euler identities,
// decomposition of flag counts and the codimension estimate.

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qflag/geometry.hpp"
#include "qflag/hall.hpp"
#include "qflag/io.hpp"

namespace qflag {

struct SuiteResult {
  bool ok = true;
  std::size_t checked = 0;
  std::string failure; // first failing item

  void fail(const std::string &why)
  {
    if (ok)
      failure = why;
    ok = false;
  }
  void merge(const SuiteResult &o)
  {
    checked += o.checked;
    if (!o.ok)
      fail(o.failure);
  }
};

struct ModqSuiteResult {
  SuiteResult equivalence;   // brute force == reflection residue, same emptiness
  SuiteResult preprojective; // nonempty => count = 1 mod p
};

/// Every word of length 1..max_len, every class of the word's dimension, every prime.
inline ModqSuiteResult verify_modq_equivalence(HallContext &ctx, std::size_t max_len,
                                               const std::vector<Elem> &primes)
{
  ModqSuiteResult out;
  const Quiver &q = ctx.quiver();
  for (std::size_t len = 1; len <= max_len; ++len)
    for (auto const &w : all_words(q, len)) {
      Filtration f = word_to_filtration(q, w);
      for (auto const &c : ctx.classes_of_dim(f.top()))
        for (Elem p : primes) {
          Representation x = ctx.classifier(p).rep_of_class(c);
          BigInt brute = count_flag_bruteforce(x, f);
          ModQCount mq = count_flag_modq(x, f);
          const std::string tag = "word " + format_word(w, q) + ", class " +
                                  format_class(ctx.roots(), c) + ", p=" + std::to_string(p);
          ++out.equivalence.checked;
          if (BigInt(brute % p) != mq.residue || (brute != 0) != mq.nonempty)
            out.equivalence.fail(tag + ": brute " + brute.str() + " vs residue " +
                                 std::to_string(mq.residue));
          if (brute != 0) {
            ++out.preprojective.checked;
            if (brute % p != 1)
              out.preprojective.fail(tag + ": count " + brute.str());
          }
        }
    }
  return out;
}

/// (u_a * u_b) * u_c = u_a * (u_b * u_c) for all vertices a, b, c.
inline SuiteResult verify_hall_associativity(HallContext &ctx, const std::vector<Elem> &primes)
{
  SuiteResult r;
  const Quiver &q = ctx.quiver();
  for (Elem p : primes)
    for (auto const &w : all_words(q, 3)) {
      HallElement ua = simple_element(ctx, w[0]), ub = simple_element(ctx, w[1]),
                  uc = simple_element(ctx, w[2]);
      HallElement lhs = hall_product(ctx, hall_product(ctx, ua, ub, p), uc, p);
      HallElement rhs = hall_product(ctx, ua, hall_product(ctx, ub, uc, p), p);
      ++r.checked;
      if (!(lhs == rhs))
        r.fail("word " + format_word(w, q) + ", p=" + std::to_string(p) + ": " +
               detail::element_difference(ctx.roots(), lhs, rhs));
    }
  return r;
}

/// Coefficient of [X] in u_w equals the number of flags of type d(w) in X.
inline SuiteResult verify_product_flag_consistency(HallContext &ctx, std::size_t max_len,
                                                   const std::vector<Elem> &primes)
{
  SuiteResult r;
  const Quiver &q = ctx.quiver();
  for (Elem p : primes)
    for (std::size_t len = 1; len <= max_len; ++len)
      for (auto const &w : all_words(q, len)) {
        HallElement u = u_word(ctx, w, p);
        Filtration f = word_to_filtration(q, w);
        for (auto const &c : ctx.classes_of_dim(f.top())) {
          BigInt flags = count_flag_bruteforce(ctx.classifier(p).rep_of_class(c), f);
          ++r.checked;
          if (u.coefficient(c) != BigRational(flags))
            r.fail("word " + format_word(w, q) + ", class " + format_class(ctx.roots(), c) +
                   ", p=" + std::to_string(p) + ": product " + u.coefficient(c).str() +
                   " vs flags " + flags.str());
        }
        for (auto const &t : u.terms())
          if (ctx.roots().dimension(t.first) != f.top())
            r.fail("u_w for " + format_word(w, q) + " has a term outside dimension " +
                   f.top().to_string());
      }
  return r;
}

/// Every Hall polynomial f^xi_{mu nu} with total dimension of xi at most
/// max_total passes its held-out prime, has integer coefficients and
/// reproduces every count it was built from.
inline SuiteResult verify_hall_polynomials(HallContext &ctx, long long max_total)
{
  SuiteResult r;
  const RootSystem &rs = ctx.roots();
  for (auto const &d : rs.dim_vectors_up_to_total(max_total))
    for (auto const &xi : ctx.classes_of_dim(d)) {
      DimVector n = ctx.quiver().zero();
      // every n with 0 <= n <= d
      while (true) {
        for (auto const &nu : ctx.classes_of_dim(n))
          for (auto const &mu : ctx.classes_of_dim(d - n)) {
            const HallPolynomialResult &h = ctx.hall_polynomial_result(xi, mu, nu);
            ++r.checked;
            bool ok = h.verified;
            for (std::size_t k = 0; ok && k < h.primes.size(); ++k)
              ok = h.poly.eval(BigInt(h.primes[k])) == h.counts[k];
            if (!ok)
              r.fail("xi " + format_class(rs, xi) + ", mu " + format_class(rs, mu) + ", nu " +
                     format_class(rs, nu) + ": held-out check failed at p=" +
                     std::to_string(h.held_out));
          }
        std::size_t i = 0;
        while (i < n.size() && n[i] == d[i]) {
          n[i] = 0;
          ++i;
        }
        if (i == n.size())
          break;
        ++n[i];
      }
    }
  return r;
}

struct PsiSuiteResult {
  SuiteResult products;    // indicator products and u_w at q = 0
  SuiteResult injectivity; // distinct class sets per dimension <= number of classes
};

/// All pairs of nonempty words with |w| + |v| <= max_total.
inline PsiSuiteResult verify_psi_suite(HallContext &ctx, std::size_t max_total)
{
  PsiSuiteResult out;
  const Quiver &q = ctx.quiver();
  for (std::size_t total = 2; total <= max_total; ++total)
    for (std::size_t lw = 1; lw < total; ++lw)
      for (auto const &w : all_words(q, lw))
        for (auto const &v : all_words(q, total - lw)) {
          PsiReport rep = verify_psi(ctx, w, v);
          ++out.products.checked;
          if (!rep.ok)
            out.products.fail(rep.detail);
        }
  std::map<DimVector, std::set<std::vector<IsoClass>>> sets;
  for (std::size_t len = 1; len <= max_total; ++len)
    for (auto const &w : all_words(q, len))
      sets[word_dimension(q, w)].insert(composition_classes(ctx, w).classes);
  for (auto const &[d, s] : sets) {
    ++out.injectivity.checked;
    if (s.size() > ctx.classes_of_dim(d).size())
      out.injectivity.fail("dimension " + d.to_string() + ": " + std::to_string(s.size()) +
                           " composition sets but " +
                           std::to_string(ctx.classes_of_dim(d).size()) + " classes");
  }
  return out;
}

/// q-binomial product against subrepresentation enumeration in X^{r,e}, for
/// r in [0, max_entry], e in [-max_entry, max_entry], nu <= max_nu.
inline SuiteResult verify_fiber_formula(const std::vector<Elem> &primes, long long max_entry = 2,
                                        std::size_t max_nu = 3)
{
  SuiteResult res;
  for (std::size_t nu = 0; nu <= max_nu; ++nu) {
    const std::size_t len = nu + 1;
    std::vector<long long> r(len, 0), e(len, -max_entry);
    auto next = [&](std::vector<long long> &v, long long lo) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < max_entry) {
          ++v[i];
          return true;
        }
        v[i] = lo;
      }
      return false;
    };
    do {
      std::fill(e.begin(), e.end(), -max_entry);
      do {
        bool hyp = true;
        for (std::size_t j = 0; j <= nu; ++j) {
          long long v = e[j] + r[nu - j];
          if (v < 0 || (j > 0 && v < e[j - 1] + r[nu - j + 1]))
            hyp = false;
        }
        if (!hyp)
          continue;
        QPolynomial poly = count_fiber_formula(r, e);
        DimVector rd(std::vector<long long>(r.begin(), r.end()));
        for (Elem p : primes) {
          BigInt brute = count_subreps(fiber_representation(r, e, p), rd, false);
          ++res.checked;
          if (poly.eval(BigInt(p)) != brute)
            res.fail("r=" + format_sequence(r) + " e=" + format_sequence(e) + " p=" +
                     std::to_string(p) + ": formula " + poly.eval(BigInt(p)).str() + " vs " +
                     brute.str());
        }
        if (!poly.is_zero() && poly.eval(0) != 1)
          res.fail("r=" + format_sequence(r) + " e=" + format_sequence(e) +
                   ": nonempty but value at q=0 is " + poly.eval(0).str());
      } while (next(e, -max_entry));
    } while (next(r, 0));
  }
  return res;
}

/// dim Ext^1(M, N) as the cokernel dimension of
/// (f_i) -> (f_j M_alpha - N_alpha f_i) from sum_i Hom(M_i, N_i) to sum_alpha Hom(M_i, N_j).
inline long long ext_dim_by_cokernel(const Representation &m, const Representation &n)
{
  FpMatrix sys = detail::hom_system(m, n);
  return static_cast<long long>(sys.rows()) - static_cast<long long>(rank(sys));
}

/// Number of Hom(M, N) elements by trying every tuple of vertex maps.
inline BigInt hom_count_bruteforce(const Representation &m, const Representation &n)
{
  const Quiver &q = m.quiver();
  const Elem p = m.p();
  std::vector<FpMatrix> f;
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    f.emplace_back(p, n.dim_at(i), m.dim_at(i));
  BigInt count = 0;
  while (true) {
    if (Morphism{f}.commutes(m, n))
      count += 1;
    // advance the base-p counter over all entries
    bool carry = true;
    for (std::size_t i = 0; carry && i < f.size(); ++i)
      for (std::size_t r = 0; carry && r < f[i].rows(); ++r)
        for (std::size_t c = 0; carry && c < f[i].cols(); ++c) {
          if (++f[i](r, c) < p)
            carry = false;
          else
            f[i](r, c) = 0;
        }
    if (carry)
      break;
  }
  return count;
}

/// <dim M, dim N> = [M, N] - [M, N]^1 with Ext from the cokernel formula,
/// [M, N] = [DN, DM], and |Hom(M, N)| = p^[M, N] by enumeration when small.
inline SuiteResult verify_euler_identity(const std::vector<QuiverPtr> &quivers, std::size_t pairs,
                                         std::uint64_t seed, Elem p, long long max_entry = 2,
                                         std::size_t brute_limit = 12)
{
  SuiteResult r;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> dimd(0, max_entry);
  for (std::size_t t = 0; t < pairs; ++t) {
    const QuiverPtr &q = quivers[t % quivers.size()];
    auto random_dim = [&] {
      DimVector d(q->vertex_count());
      for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = dimd(rng);
      return d;
    };
    Representation m = random_representation(q, p, random_dim(), rng);
    Representation n = random_representation(q, p, random_dim(), rng);
    const long long hom = static_cast<long long>(hom_dim(m, n));
    const long long ext = ext_dim_by_cokernel(m, n);
    const std::string tag = "pair " + std::to_string(t) + " dims " + m.dim().to_string() + ", " +
                            n.dim().to_string();
    ++r.checked;
    if (euler_form(*q, m.dim(), n.dim()) != hom - ext)
      r.fail(tag + ": Euler form " + std::to_string(euler_form(*q, m.dim(), n.dim())) +
             " vs hom - ext " + std::to_string(hom - ext));
    if (ext != ext_dim(m, n))
      r.fail(tag + ": ext from Euler form disagrees with cokernel");
    if (static_cast<long long>(hom_dim(dualize(n), dualize(m))) != hom)
      r.fail(tag + ": [M,N] != [DN,DM]");
    auto basis = hom_basis(m, n);
    for (auto const &f : basis)
      if (!f.commutes(m, n))
        r.fail(tag + ": Hom basis element does not commute");
    std::size_t unknowns = 0;
    for (std::size_t i = 0; i < q->vertex_count(); ++i)
      unknowns += m.dim_at(i) * n.dim_at(i);
    if (unknowns <= brute_limit) {
      BigInt expect = 1;
      for (long long k = 0; k < hom; ++k)
        expect *= p;
      if (hom_count_bruteforce(m, n) != expect)
        r.fail(tag + ": |Hom| is not p^[M,N]");
    }
  }
  return r;
}

/// #Fl(f, M) = sum_r fiber(r, e_a)(p) * #Fl(f - r e_a, pi_a M)<a>^0 at a sink a,
/// both in total and stratum by stratum.
inline SuiteResult verify_decomposition(const Representation &m, const Filtration &f, std::size_t a)
{
  SuiteResult res;
  const std::size_t nu = f.length();
  SplitSimple split = pi_a(m, a);
  const BigInt p = m.p();
  std::vector<long long> e(nu + 1);
  for (std::size_t i = 0; i <= nu; ++i)
    e[nu - i] = f.top()[a] - f[i][a];

  BigInt total = 0;
  std::vector<long long> r(nu + 1, 0);
  r[nu] = static_cast<long long>(split.s);
  auto recurse = [&](auto &self, std::size_t i) -> void {
    if (i == nu) {
      std::vector<DimVector> lv = f.levels();
      for (std::size_t k = 0; k <= nu; ++k)
        lv[k][a] -= r[k];
      BigInt reduced = 0;
      if (Filtration::is_valid(lv))
        reduced = count_flag_bruteforce(split.rest, Filtration(lv),
                                        Stratum{a, std::vector<long long>(nu + 1, 0)});
      BigInt fiber = reduced == 0 ? BigInt(0) : count_fiber_formula(r, e).eval(p);
      BigInt stratum = count_flag_bruteforce(m, f, Stratum{a, r});
      ++res.checked;
      if (stratum != fiber * reduced)
        res.fail("stratum " + format_sequence(r) + " of " + f.to_string() + ": " + stratum.str() +
                 " vs " + fiber.str() + " * " + reduced.str());
      total += fiber * reduced;
      return;
    }
    for (long long v = 0; v <= f[i][a]; ++v) {
      r[i] = v;
      self(self, i + 1);
    }
    r[i] = 0;
  };
  recurse(recurse, 1);
  BigInt whole = count_flag_bruteforce(m, f);
  ++res.checked;
  if (whole != total)
    res.fail("filtration " + f.to_string() + " on " + m.dim().to_string() + ": " + whole.str() +
             " vs sum " + total.str());
  return res;
}

/// The decomposition identity for every class of total dimension <= max_total
/// with all entries <= max_entry, every strict filtration of its dimension, at
/// the first sink.
inline SuiteResult verify_decomposition_suite(HallContext &ctx, long long max_total,
                                              long long max_entry, const std::vector<Elem> &primes)
{
  SuiteResult res;
  const Quiver &q = ctx.quiver();
  std::size_t a = 0;
  while (!q.is_sink(a))
    ++a;
  for (Elem p : primes)
    for (auto const &c : ctx.roots().classes_up_to_total(max_total)) {
      const DimVector d = ctx.roots().dimension(c);
      if (*std::max_element(d.values().begin(), d.values().end()) > max_entry)
        continue;
      Representation m = ctx.classifier(p).rep_of_class(c);
      for (auto const &f : strict_filtrations(m.dim()))
        res.merge(verify_decomposition(m, f, a));
    }
  return res;
}

/// codim_report on every strict filtration with total dimension <= max_total.
inline SuiteResult verify_codim_suite(HallContext &ctx, long long max_total, std::size_t sample = 4)
{
  SuiteResult res;
  for (auto const &d : ctx.roots().dim_vectors_up_to_total(max_total))
    for (auto const &f : strict_filtrations(d)) {
      CodimReport rep = codim_report(ctx, f, sample);
      ++res.checked;
      if (!rep.bound_holds)
        res.fail("filtration " + f.to_string() + ": codim " + std::to_string(rep.codim) +
                 ", ext bound " + std::to_string(rep.ext_bound) + ", dim RepFl " +
                 std::to_string(rep.dim_rep_fl) + ", dim Rep " + std::to_string(rep.dim_rep) +
                 (rep.unique_minimizer ? "" : ", minimizer not unique") +
                 (rep.point_bounds_hold ? "" : ", point bound violated"));
    }
  return res;
}

} // namespace qflag
