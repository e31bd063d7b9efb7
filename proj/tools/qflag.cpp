// qflag: command-line front end for the flag / Hall algebra engine.
//
// Exit status: 0 success, 1 verification failure, 2 input error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qflag/geometry.hpp"
#include "qflag/hall.hpp"
#include "qflag/io.hpp"
#include "qflag/suites.hpp"

using namespace qflag;

namespace {

struct Options {
  bool tsv = false;

  std::string quiver = "a2";
  std::string rep;
  std::string filtration;
  std::optional<unsigned> p;
  std::string method = "brute";
  std::string stratum;

  std::string left, right, word;
  bool at_zero = false;

  std::string xi, mu, nu;
  long long table = -1;

  std::string sink;
  std::string suite;
  std::size_t max_word_len = 4;
  long long max_total = 5;
  std::string primes = "2,3";
  std::size_t pairs = 200;
  std::uint64_t seed = 1;
  long long max_entry = 2;
  std::size_t max_nu = 3;
};

Elem checked_prime(unsigned p)
{
  if (!is_prime(p))
    throw Error("--p " + std::to_string(p) + " is not a prime");
  return p;
}

std::vector<Elem> parse_primes(const std::string &text)
{
  std::vector<Elem> out;
  for (long long v : parse_int_list(text, "--primes")) {
    if (v < 2 || v > 1000000 || !is_prime(static_cast<Elem>(v)))
      throw Error("--primes entry " + std::to_string(v) + " is not a prime");
    out.push_back(static_cast<Elem>(v));
  }
  if (out.empty())
    throw Error("--primes is empty");
  return out;
}

std::size_t vertex_by_label(const Quiver &q, const std::string &text)
{
  try {
    std::size_t used = 0;
    int label = std::stoi(text, &used);
    if (used != text.size())
      throw std::invalid_argument(text);
    return q.index_of(label);
  } catch (const std::logic_error &) {
    throw Error("bad vertex label '" + text + "'");
  }
}

/// "LABEL:r0,r1,..."
Stratum parse_stratum(const Quiver &q, const std::string &text)
{
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error("--stratum expects VERTEX:r0,r1,...");
  return Stratum{vertex_by_label(q, text.substr(0, colon)),
                 parse_int_list(text.substr(colon + 1), "--stratum")};
}

std::size_t default_sink(const Quiver &q)
{
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    if (q.is_sink(i))
      return i;
  throw Error("quiver has no sink");
}

void print_element(const Options &o, const RootSystem &rs, const HallElement &e)
{
  if (e.is_zero())
    std::cout << (o.tsv ? "0\t0\n" : "0\n");
  for (auto const &[c, coef] : e.terms()) {
    if (o.tsv)
      std::cout << format_class(rs, c) << '\t' << coef.str() << '\n';
    else
      std::cout << '[' << format_class(rs, c) << "] " << coef.str() << '\n';
  }
}

int cmd_count_flag(const Options &o)
{
  QuiverPtr q = load_quiver(o.quiver);
  std::optional<Elem> p;
  if (o.p)
    p = checked_prime(*o.p);
  Representation m = load_representation(o.rep, q, p);
  Filtration f = load_filtration(o.filtration, *q);
  if (o.method == "brute") {
    std::optional<Stratum> st;
    if (!o.stratum.empty())
      st = parse_stratum(*q, o.stratum);
    BigInt n = count_flag_bruteforce(m, f, st);
    if (o.tsv)
      std::cout << "brute\t" << m.p() << '\t' << n.str() << '\n';
    else
      std::cout << n.str() << '\n';
    return 0;
  }
  if (o.method == "reflect") {
    if (!o.stratum.empty())
      throw Error("--stratum is only supported with --method brute");
    ModQCount c = count_flag_modq(m, f);
    if (o.tsv)
      std::cout << "reflect\t" << m.p() << '\t' << c.residue << '\t' << (c.nonempty ? 1 : 0)
                << '\n';
    else
      std::cout << c.residue << " (mod " << m.p() << ")\n";
    return 0;
  }
  throw Error("--method must be brute or reflect");
}

int cmd_hall_mul(const Options &o)
{
  HallContext ctx(load_quiver(o.quiver));
  const RootSystem &rs = ctx.roots();
  const Elem p = checked_prime(o.p.value_or(2));
  HallElement out;
  if (!o.word.empty()) {
    if (!o.left.empty() || !o.right.empty())
      throw Error("use either --word or --left/--right");
    Word w = parse_word(o.word, ctx.quiver());
    out = o.at_zero ? u_word_at_zero(ctx, w) : u_word(ctx, w, p);
  } else {
    if (o.left.empty() || o.right.empty())
      throw Error("hall-mul needs --left and --right, or --word");
    HallElement a = HallElement::basis(parse_class(rs, o.left));
    HallElement b = HallElement::basis(parse_class(rs, o.right));
    out = o.at_zero ? hall_product_at_zero(ctx, a, b) : hall_product(ctx, a, b, p);
  }
  print_element(o, rs, out);
  return 0;
}

int cmd_hall_poly(const Options &o)
{
  HallContext ctx(load_quiver(o.quiver));
  const RootSystem &rs = ctx.roots();
  auto row = [&](const IsoClass &xi, const IsoClass &mu, const IsoClass &nu) {
    const HallPolynomialResult &h = ctx.hall_polynomial_result(xi, mu, nu);
    if (o.tsv)
      std::cout << format_class(rs, xi) << '\t' << format_class(rs, mu) << '\t'
                << format_class(rs, nu) << '\t' << h.poly.to_string() << '\t'
                << (h.verified ? "verified" : "UNVERIFIED") << '\n';
    else if (o.table >= 0)
      std::cout << "f[" << format_class(rs, xi) << "; " << format_class(rs, mu) << ", "
                << format_class(rs, nu) << "] = " << h.poly.to_string()
                << (h.verified ? "" : "  (held-out check FAILED)") << '\n';
    else
      std::cout << h.poly.to_string() << '\n';
    if (!h.verified && o.table < 0 && !o.tsv)
      std::cerr << "held-out check failed at p = " << h.held_out << '\n';
    return h.verified;
  };
  if (o.table >= 0) {
    if (!o.xi.empty() || !o.mu.empty() || !o.nu.empty())
      throw Error("--table excludes --xi/--mu/--nu");
    bool ok = true;
    for (auto const &d : rs.dim_vectors_up_to_total(o.table))
      for (auto const &xi : ctx.classes_of_dim(d)) {
        std::vector<DimVector> subs{ctx.quiver().zero()};
        for (auto const &n : rs.dim_vectors_up_to_total(d.total()))
          if (n.leq(d))
            subs.push_back(n);
        for (auto const &n : subs)
          for (auto const &nu : ctx.classes_of_dim(n))
            for (auto const &mu : ctx.classes_of_dim(d - n))
              ok = row(xi, mu, nu) && ok;
      }
    return ok ? 0 : 1;
  }
  if (o.xi.empty() || o.mu.empty() || o.nu.empty())
    throw Error("hall-poly needs --xi, --mu and --nu (or --table MAX)");
  return row(parse_class(rs, o.xi), parse_class(rs, o.mu), parse_class(rs, o.nu)) ? 0 : 1;
}

int cmd_roots(const Options &o)
{
  QuiverPtr q = load_quiver(o.quiver);
  RootSystem rs(q);
  for (std::size_t k = 0; k < rs.size(); ++k) {
    if (o.tsv)
      std::cout << k << '\t' << root_name(rs, k) << '\t' << rs.root(k).to_string() << '\n';
    else
      std::cout << root_name(rs, k) << ' ' << rs.root(k).to_string() << '\n';
  }
  return 0;
}

int cmd_classify(const Options &o)
{
  QuiverPtr q = load_quiver(o.quiver);
  std::optional<Elem> p;
  if (o.p)
    p = checked_prime(*o.p);
  Representation m = load_representation(o.rep, q, p);
  RootSystem rs(q);
  Classifier cl(rs, m.p());
  IsoClass c = cl.classify(m);
  if (o.tsv)
    std::cout << format_class(rs, c) << '\t' << m.dim().to_string() << '\n';
  else
    std::cout << format_class(rs, c) << '\n';
  return 0;
}

int cmd_tangent(const Options &o)
{
  QuiverPtr q = load_quiver(o.quiver);
  std::optional<Elem> p;
  if (o.p)
    p = checked_prime(*o.p);
  Representation m = load_representation(o.rep, q, p);
  Filtration f = load_filtration(o.filtration, *q);
  std::size_t id = 0;
  for_each_flag(m, f, [&](const FlagPoint &pt, const std::vector<Representation> &) {
    std::size_t t = tangent_dim(m, pt);
    if (o.tsv)
      std::cout << id << '\t' << t << '\n';
    else
      std::cout << "point " << id << ": tangent " << t << '\n';
    ++id;
  });
  return 0;
}

int cmd_geometry_report(const Options &o)
{
  QuiverPtr q = load_quiver(o.quiver);
  std::optional<Elem> p;
  if (o.p)
    p = checked_prime(*o.p);
  Representation m = load_representation(o.rep, q, p);
  Filtration f = load_filtration(o.filtration, *q);
  const std::size_t a = o.sink.empty() ? default_sink(*q) : vertex_by_label(*q, o.sink);
  HallContext ctx(q);
  IsoClass iso = ctx.classifier(m.p()).classify(m);

  std::cout << (o.tsv ? "point\tstratum\ttangent\n" : "");
  std::size_t id = 0;
  for_each_flag(m, f, [&](const FlagPoint &pt, const std::vector<Representation> &levels) {
    std::string r = format_sequence(stratum_of(levels, a));
    if (o.tsv)
      std::cout << id << '\t' << r << '\t' << tangent_dim(m, pt) << '\n';
    else
      std::cout << "point " << id << ": stratum " << r << " tangent " << tangent_dim(m, pt)
                << '\n';
    ++id;
  });

  CountingPolynomial cp = counting_polynomial_flag(ctx, iso, f);
  CodimReport cr = codim_report(ctx, f);
  auto kv = [&](const std::string &k, const std::string &v) {
    std::cout << k << (o.tsv ? "\t" : ": ") << v << '\n';
  };
  kv("class", format_class(ctx.roots(), iso));
  kv("points", std::to_string(id));
  kv("polynomial", cp.poly.to_string() + (cp.verified ? "" : " (held-out check FAILED)"));
  kv("P(0)", cp.p0().str());
  kv("P(1)", cp.p1().str());
  kv("euler_sum", std::to_string(flag_euler_sum(*q, f)));
  kv("dim_rep_fl", std::to_string(cr.dim_rep_fl));
  kv("dim_rep", std::to_string(cr.dim_rep));
  kv("codim", std::to_string(cr.codim));
  kv("ext_bound", std::to_string(cr.ext_bound));
  kv("min_ext_lambda", cr.min_ext_lambda ? std::to_string(*cr.min_ext_lambda) : "none");
  kv("bound_holds", cr.bound_holds ? "yes" : "no");
  return cp.verified && cr.bound_holds ? 0 : 1;
}

std::vector<QuiverPtr> load_quivers(const std::string &list)
{
  std::vector<QuiverPtr> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ','))
    out.push_back(load_quiver(name));
  if (out.empty())
    throw Error("--quiver is empty");
  return out;
}

int report_suite(const Options &o, const std::string &name, const SuiteResult &r)
{
  if (o.tsv)
    std::cout << name << '\t' << r.checked << '\t' << (r.ok ? "PASS" : "FAIL") << '\t' << r.failure
              << '\n';
  else
    std::cout << name << ": " << (r.ok ? "PASS" : "FAIL") << " (" << r.checked << " checks)"
              << (r.ok ? "" : "\n  first failure: " + r.failure) << '\n';
  return r.ok ? 0 : 1;
}

int cmd_verify(const Options &o)
{
  const std::vector<Elem> primes = parse_primes(o.primes);
  std::vector<QuiverPtr> quivers = load_quivers(o.quiver);
  int status = 0;
  auto note = [&](const std::string &name, const SuiteResult &r) {
    status = std::max(status, report_suite(o, name, r));
  };
  const std::string &s = o.suite;
  if (s == "fiber-formula") {
    note(s, verify_fiber_formula(primes, o.max_entry, o.max_nu));
    return status;
  }
  if (s == "euler-identity") {
    note(s, verify_euler_identity(quivers, o.pairs, o.seed, primes.front()));
    return status;
  }
  if (s != "modq-equivalence" && s != "hall-associativity" && s != "psi-iso" &&
      s != "decomposition" && s != "codim")
    throw Error("unknown suite '" + s + "'");
  for (auto const &q : quivers) {
    if (!is_dynkin(*q))
      throw Error("suite '" + s + "' needs a Dynkin quiver");
    HallContext ctx(q);
    const std::string tag = s + "[" + (quivers.size() > 1 ? o.quiver + "#" : std::string()) +
                            std::to_string(q->vertex_count()) + " vertices]";
    if (s == "modq-equivalence") {
      ModqSuiteResult r = verify_modq_equivalence(ctx, o.max_word_len, primes);
      note(tag, r.equivalence);
      note(tag + " preprojective", r.preprojective);
    } else if (s == "hall-associativity") {
      note(tag, verify_hall_associativity(ctx, primes));
      note(tag + " product-flag", verify_product_flag_consistency(ctx, o.max_word_len, primes));
      note(tag + " polynomials", verify_hall_polynomials(ctx, o.max_total));
    } else if (s == "psi-iso") {
      PsiSuiteResult r = verify_psi_suite(ctx, o.max_word_len);
      note(tag, r.products);
      note(tag + " injectivity", r.injectivity);
    } else if (s == "decomposition") {
      note(tag, verify_decomposition_suite(ctx, o.max_total, o.max_entry, primes));
    } else {
      note(tag, verify_codim_suite(ctx, o.max_total));
    }
  }
  return status;
}

} // namespace

int main(int argc, char **argv)
{
  Options o;
  CLI::App app{"Quiver flag varieties and Hall algebras over GF(p)"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text or tsv")
      ->check(CLI::IsMember({"text", "tsv"}))
      ->capture_default_str();

  auto quiver_opt = [&](CLI::App *c) {
    c->add_option("--quiver", o.quiver, "fixture (a1, a2, a3, d4) or quiver JSON file")
        ->capture_default_str();
  };
  auto rep_opts = [&](CLI::App *c) {
    quiver_opt(c);
    c->add_option("--rep", o.rep, "fixture (s1, s2, p, pp, m22) or representation JSON file")
        ->required();
    c->add_option("--p", o.p, "prime (default 2 for fixtures)");
  };

  auto *count = app.add_subcommand("count-flag", "count flags of a given type");
  rep_opts(count);
  count->add_option("--filtration", o.filtration, "G, inline JSON array, or file")->required();
  count->add_option("--method", o.method, "brute or reflect")
      ->check(CLI::IsMember({"brute", "reflect"}))
      ->capture_default_str();
  count->add_option("--stratum", o.stratum, "restrict to VERTEX:r0,...,rnu (brute only)");

  auto *mul = app.add_subcommand("hall-mul", "products in the Hall algebra");
  quiver_opt(mul);
  mul->add_option("--left", o.left, "iso class, e.g. S1+S2 or d1_1");
  mul->add_option("--right", o.right, "iso class");
  mul->add_option("--word", o.word, "vertex labels, e.g. 1,2 for u_1 * u_2");
  mul->add_option("--p", o.p, "prime (default 2)");
  mul->add_flag("--q0", o.at_zero, "evaluate the Hall polynomials at q = 0");

  auto *poly = app.add_subcommand("hall-poly", "Hall polynomials");
  quiver_opt(poly);
  poly->add_option("--xi", o.xi, "middle term");
  poly->add_option("--mu", o.mu, "quotient");
  poly->add_option("--nu", o.nu, "subrepresentation");
  poly->add_option("--table", o.table, "every triple with total dimension <= MAX");

  auto *roots = app.add_subcommand("roots", "positive roots in root order");
  quiver_opt(roots);

  auto *cls = app.add_subcommand("classify", "isomorphism class of a representation");
  rep_opts(cls);

  auto *tan = app.add_subcommand("tangent", "tangent dimension at every flag point");
  rep_opts(tan);
  tan->add_option("--filtration", o.filtration, "G, inline JSON array, or file")->required();

  auto *geo = app.add_subcommand("geometry-report", "points, strata, tangents and summary");
  rep_opts(geo);
  geo->add_option("--filtration", o.filtration, "G, inline JSON array, or file")->required();
  geo->add_option("--sink", o.sink, "sink vertex label for strata (default: first sink)");

  auto *ver = app.add_subcommand("verify", "batch verification suites");
  ver->add_option("--suite", o.suite,
                  "modq-equivalence | hall-associativity | psi-iso | fiber-formula | "
                  "euler-identity | decomposition | codim")
      ->required();
  ver->add_option("--quiver", o.quiver, "quiver or comma-separated list")->capture_default_str();
  ver->add_option("--max-word-len", o.max_word_len, "word length (psi-iso: |w| + |v|)")
      ->capture_default_str();
  ver->add_option("--max-total", o.max_total, "total dimension bound")->capture_default_str();
  ver->add_option("--primes", o.primes, "comma-separated primes")->capture_default_str();
  ver->add_option("--pairs", o.pairs, "euler-identity: number of random pairs")
      ->capture_default_str();
  ver->add_option("--seed", o.seed, "euler-identity: RNG seed")->capture_default_str();
  ver->add_option("--max-entry", o.max_entry, "fiber-formula, decomposition: entry bound")->capture_default_str();
  ver->add_option("--max-nu", o.max_nu, "fiber-formula: largest nu")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  o.tsv = format == "tsv";

  try {
    if (count->parsed())
      return cmd_count_flag(o);
    if (mul->parsed())
      return cmd_hall_mul(o);
    if (poly->parsed())
      return cmd_hall_poly(o);
    if (roots->parsed())
      return cmd_roots(o);
    if (cls->parsed())
      return cmd_classify(o);
    if (tan->parsed())
      return cmd_tangent(o);
    if (geo->parsed())
      return cmd_geometry_report(o);
    if (ver->parsed())
      return cmd_verify(o);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InternalError &e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
