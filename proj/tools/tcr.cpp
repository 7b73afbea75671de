#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "suite.hpp"
#include "tcr/blowup.hpp"
#include "tcr/config.hpp"
#include "tcr/function.hpp"

#ifndef TCR_FIXTURE_DIR
#define TCR_FIXTURE_DIR "fixtures"
#endif

using namespace tcr;
using nlohmann::json;

namespace {

struct Globals {
  std::string config;
  std::string fixture = "q-mu3";
  long upto = 6;
  std::string report;
  int jobs = 1;
};

Fixture load_fixture(const Globals& g) {
  const std::string path = g.config.empty() ? std::string(TCR_FIXTURE_DIR) + "/" + g.fixture + ".json" : g.config;
  return Fixture::load(path);
}

void print_check(const Check& c) {
  std::cout << std::left << std::setw(12) << c.status << c.id << "\n  " << c.claim << "\n  lhs: " << c.lhs
            << "\n  rhs: " << c.rhs << "\n";
}

int emit(const Globals& g, const std::string& fixture, const std::vector<Check>& checks) {
  bool ok = true;
  for (const auto& c : checks) {
    print_check(c);
    ok = ok && c.passed;
  }
  if (!g.report.empty()) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(check_json(c));
    std::ofstream out(g.report);
    out << json{{"fixture", fixture}, {"checks", arr}}.dump(2) << "\n";
  }
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return ok ? 0 : 1;
}

std::string dims_line(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

// "n:divisor" -> (n, divisor)
std::pair<long, Divisor> graded_divisor(const Fixture& fx, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("expected 'degree:divisor'", 0);
  return {std::stol(text.substr(0, colon)), fx.parse_divisor(text.substr(colon + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted coordinate rings, divisor layerings and blowups on elliptic curves"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "fixture config file (JSON)");
  app.add_option("--fixture", g.fixture, "shipped fixture name: q-mu3, q-mu9, fp-mu3");
  app.add_option("--upto", g.upto, "top degree");
  app.add_option("--report", g.report, "write a JSON report");
  app.add_option("--jobs", g.jobs, "worker threads for the verification suite");
  std::function<int()> action;

  // curve
  auto* curve = app.add_subcommand("curve", "curve data");
  curve->require_subcommand(1);
  curve->add_subcommand("info", "field, coefficients, alpha and named points")->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      const Curve& c = fx.curve();
      const Translation& tr = fx.translation();
      std::cout << "fixture " << fx.name() << "\nfield " << c.field().name() << "\ncoefficients a1=" << c.a1().to_string()
                << " a2=" << c.a2().to_string() << " a3=" << c.a3().to_string() << " a4=" << c.a4().to_string()
                << " a6=" << c.a6().to_string() << "\ndiscriminant " << c.discriminant().to_string() << "\nalpha "
                << tr.alpha().to_string() << "\n";
      if (tr.order()) std::cout << "order of alpha " << *tr.order() << "\n";
      else std::cout << "alpha screened non-torsion: " << (tr.screened_non_torsion() ? "yes" : "no") << "\n";
      std::cout << "orbit window " << tr.window() << "\nample " << fx.m().to_string() << " (mu = " << fx.m().degree()
                << ")\n";
      for (const auto& [name, p] : fx.points()) std::cout << "point " << name << " = " << p.to_string() << "\n";
      return 0;
    };
  });

  // rr
  std::string divisor_text;
  auto* rr = app.add_subcommand("rr", "Riemann-Roch spaces");
  rr->require_subcommand(1);
  auto* rrb = rr->add_subcommand("basis", "basis of L(D)");
  rrb->add_option("--divisor", divisor_text)->required();
  rrb->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      const Divisor d = fx.parse_divisor(divisor_text);
      RRSpace s = riemann_roch_space(fx.curve(), d);
      std::cout << "L(" << d.to_string() << "): dim " << s.dim() << "\n";
      bool ok = true;
      for (const auto& f : s.basis) {
        const bool cert = certify_membership(f, d);
        ok = ok && cert;
        std::cout << "  " << f.to_string() << (cert ? "  [certified]" : "  [NOT certified]") << "\n";
      }
      return ok ? 0 : 1;
    };
  });

  // tcr
  long degree = 1;
  std::string a_text, b_text;
  auto* tcr = app.add_subcommand("tcr", "twisted homogeneous coordinate ring");
  tcr->require_subcommand(1);
  auto* tdim = tcr->add_subcommand("dim", "dimensions of B_n and T_n");
  tdim->add_option("--n", degree);
  tdim->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      TcrContext ctx = fx.context(std::max(degree, fx.windows().max_degree));
      Algebra a = Algebra::of(fx.translation(), fx.m());
      const long b = static_cast<long>(graded_piece(ctx, degree)->dim());
      std::cout << "dim B_" << degree << " = " << b << " (expected " << a.dim_B(degree) << ")\ndim T_" << degree
                << " = " << a.dim_T(degree) << "\n";
      return b == a.dim_B(degree) ? 0 : 1;
    };
  });
  auto* tmult = tcr->add_subcommand("mult", "star product of L(m_a - D) and L(m_b - E)");
  tmult->add_option("--a", a_text, "degree:divisor")->required();
  tmult->add_option("--b", b_text, "degree:divisor")->required();
  tmult->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      auto [na, da] = graded_divisor(fx, a_text);
      auto [nb, db] = graded_divisor(fx, b_text);
      TcrContext ctx = fx.context(std::max(na + nb, fx.windows().max_degree));
      SpacePtr va = twisted_space(ctx, na, da), vb = twisted_space(ctx, nb, db);
      const Divisor target_div = da + tau_act(fx.translation(), db, -na);
      SpacePtr t = twisted_space(ctx, na + nb, target_div);
      SectionSpace prod = star_mult(ctx, *va, *vb);
      std::cout << "dims " << va->dim() << " x " << vb->dim() << " -> " << prod.dim() << "\ntarget L(m_" << na + nb
                << " - " << target_div.to_string() << "): dim " << t->dim() << "\nequal: " << (prod == *t ? "yes" : "no")
                << "\n";
      return 0;
    };
  });

  // layering
  std::string lay_a, lay_b, op = "G", mode = "max", kind = "M", point_name = "p", y_text;
  long k_param = 1, n_param = 1, i_param = 1, r_param = 1, e_param = 1, j_param = 0;
  auto* lay = app.add_subcommand("layering", "divisor layerings");
  lay->require_subcommand(1);
  auto* lapply = lay->add_subcommand("apply", "apply F_q or G_d");
  lapply->add_option("--op", op, "F or G");
  lapply->add_option("--divisor", divisor_text, "d for G, a single point for F");
  lapply->add_option("--layering", lay_a)->required();
  lapply->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      const Layering z = fx.parse_layering(lay_a);
      const Divisor d = fx.parse_divisor(divisor_text);
      Layering out;
      if (op == "F") {
        if (d.degree() != 1 || d.support().size() != 1) throw std::invalid_argument("F needs a single point");
        out = apply_F(fx.translation(), d.support().front(), z);
      } else {
        out = apply_G(fx.translation(), d, z);
      }
      std::cout << out.to_string() << "\n";
      return 0;
    };
  });
  auto* lclosed = lay->add_subcommand("closed", "closed form of n-fold G against step-by-step application");
  lclosed->add_option("--divisor", divisor_text)->required();
  lclosed->add_option("--n", n_param);
  lclosed->add_option("--layering", lay_a);
  lclosed->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      const Layering z = lay_a.empty() ? Layering{} : fx.parse_layering(lay_a);
      const Divisor d = fx.parse_divisor(divisor_text);
      const Layering c = iterate_G_closed(fx.translation(), d, n_param, z);
      const Layering s = iterate_G_steps(fx.translation(), d, n_param, z);
      std::cout << "closed: " << c.to_string() << "\nsteps:  " << s.to_string() << "\nequal: " << (c == s ? "yes" : "no")
                << "\n";
      return c == s ? 0 : 1;
    };
  });
  auto* llat = lay->add_subcommand("lattice", "layerwise min or max");
  llat->add_option("--a", lay_a)->required();
  llat->add_option("--b", lay_b)->required();
  llat->add_option("--mode", mode, "min (ideal sum) or max (intersection)");
  llat->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      const Layering r = layering_lattice(fx.parse_layering(lay_a), fx.parse_layering(lay_b),
                                          mode == "min" ? LatticeMode::min : LatticeMode::max);
      std::cout << r.to_string() << "\n";
      return 0;
    };
  });
  auto* lstd = lay->add_subcommand("standard", "standard families");
  lstd->add_option("--kind", kind, "M, Mprime, Q, Qprime, c, buildM, relpoint, iterJ");
  lstd->add_option("--k", k_param);
  lstd->add_option("--n", n_param);
  lstd->add_option("--i", i_param);
  lstd->add_option("--r", r_param);
  lstd->add_option("--e", e_param);
  lstd->add_option("--j", j_param);
  lstd->add_option("--divisor", divisor_text);
  lstd->add_option("--point", point_name);
  lstd->add_option("--y", y_text);
  lstd->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      const Translation& tr = fx.translation();
      const Divisor d = fx.parse_divisor(divisor_text);
      const Point p = fx.point(point_name);
      const long mu = fx.m().degree();
      Layering z;
      if (kind == "M") z = layering_M(tr, k_param, d);
      else if (kind == "Mprime") z = layering_Mprime(tr, k_param, d);
      else if (kind == "Q") z = layering_Q(tr, i_param, r_param, e_param, p, mu);
      else if (kind == "Qprime") z = layering_Qprime(tr, i_param, r_param, e_param, p, mu);
      else if (kind == "c") z = layering_c(tr, j_param, n_param, p);
      else if (kind == "buildM") z = layering_buildM(tr, d, fx.parse_divisor(y_text), k_param);
      else if (kind == "relpoint") z = layering_relpoint(tr, d, p, n_param);
      else if (kind == "iterJ") z = layering_iterJ(tr, d, p, n_param);
      else throw std::invalid_argument("unknown kind " + kind);
      std::cout << z.to_string() << "\n";
      return 0;
    };
  });

  // hilbert
  auto* hil = app.add_subcommand("hilbert", "dimension theory of layering ideals");
  hil->require_subcommand(1);
  auto* hid = hil->add_subcommand("ideal", "dimension table of T/J and J");
  hid->add_option("--layering", lay_a)->required();
  hid->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      Algebra a = Algebra::of(fx.translation(), fx.m());
      const Layering z = fx.parse_layering(lay_a);
      const DimProfile pr = ideal_dims(a, z, g.upto);
      std::cout << "layering " << z.to_string() << "\ns = " << pr.s << ", stable from n = " << pr.ell
                << ", consistent: " << (pr.consistent ? "yes" : "no") << "\n n  dim(T/J)_n      dim J_n   status\n";
      for (long n = 0; n <= g.upto; ++n) {
        const DimEntry& e = pr.at(n);
        std::ostringstream q, j;
        if (e.exact()) {
          q << e.lo;
          j << a.dim_T(n) - e.lo;
        } else {
          q << "[" << e.lo << "," << e.hi << "]";
          j << "[" << a.dim_T(n) - e.hi << "," << a.dim_T(n) - e.lo << "]";
        }
        std::cout << std::setw(2) << n << "  " << std::setw(14) << std::left << q.str() << "  " << std::setw(8)
                  << j.str() << std::right << "  " << (e.exact() ? "exact" : "bounded") << "\n";
      }
      return pr.consistent ? 0 : 1;
    };
  });

  // blowup
  std::string c_text, e_text;
  auto* bl = app.add_subcommand("blowup", "blowups T(d)");
  bl->require_subcommand(1);
  auto* bser = bl->add_subcommand("series", "Hilbert series of T(d)");
  bser->add_option("--divisor", divisor_text)->required();
  bser->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      Algebra a = Algebra::of(fx.translation(), fx.m());
      // the fit needs a few more terms than the numerator degree
      BlowupSeries s = blowup_series(a, fx.parse_divisor(divisor_text), std::max(g.upto, 10L));
      s.dims.resize(static_cast<std::size_t>(g.upto + 1));
      std::cout << "dim R_n: " << dims_line(s.dims) << "\nfitted:            " << s.fitted.to_string()
                << "\nh_T - d t/(1-t)^3: " << s.shifted_form.to_string() << "  matches: " << (s.matches_shifted ? "yes" : "no")
                << "\nh_T - d/(1-t)^3:   " << s.literal_form.to_string() << "  matches: " << (s.matches_literal ? "yes" : "no")
                << "\n";
      return s.matches_shifted ? 0 : 1;
    };
  });
  auto single = [&](CLI::App* sub, std::function<Check(const Fixture&, const TcrContext&)> f) {
    sub->callback([&, sub, f] {
      action = [&, f] {
        Fixture fx = load_fixture(g);
        TcrContext ctx = fx.context(std::max(g.upto + 2, fx.windows().max_degree));
        return emit(g, fx.name(), {f(fx, ctx)});
      };
    });
  };
  auto* bgen = bl->add_subcommand("generation", "generation certificates");
  bgen->add_option("--divisor", divisor_text)->required();
  single(bgen, [&](const Fixture& fx, const TcrContext& ctx) {
    return generation_check(ctx, fx.parse_divisor(divisor_text), g.upto);
  });
  auto* bit = bl->add_subcommand("iterate", "T(c + e) against (T(c))(e)");
  bit->add_option("--c", c_text)->required();
  bit->add_option("--e", e_text)->required();
  single(bit, [&](const Fixture& fx, const TcrContext& ctx) {
    return iterate_check(ctx, fx.parse_divisor(c_text), fx.parse_divisor(e_text), g.upto);
  });
  auto* bline = bl->add_subcommand("line", "exceptional line module of T(d + p) in T(d)");
  bline->add_option("--divisor", divisor_text);
  bline->add_option("--point", point_name);
  single(bline, [&](const Fixture& fx, const TcrContext& ctx) {
    return exceptional_filtration(ctx, fx.parse_divisor(divisor_text), fx.point(point_name), g.upto);
  });
  auto* bbuild = bl->add_subcommand("build", "module with bar pieces H0(M_n(-d_n + y))");
  bbuild->add_option("--divisor", divisor_text)->required();
  bbuild->add_option("--y", y_text);
  single(bbuild, [&](const Fixture& fx, const TcrContext& ctx) {
    return build_module(ctx, fx.parse_divisor(divisor_text), fx.parse_divisor(y_text), g.upto);
  });
  QFamilyParams qp;
  auto* bq = bl->add_subcommand("qfamily", "Q factor series, lattice identity, truncated intersection");
  bq->add_option("--divisor", divisor_text);
  bq->add_option("--point", point_name);
  bq->add_option("--i", qp.i);
  bq->add_option("--r", qp.r);
  bq->add_option("--e", qp.e);
  bq->add_option("--n", qp.n);
  bq->add_option("--ell", qp.ell);
  single(bq, [&](const Fixture& fx, const TcrContext& ctx) {
    return q_family_checks(ctx, fx.parse_divisor(divisor_text), fx.point(point_name), qp, g.upto);
  });
  auto* blr = bl->add_subcommand("leftright", "right and left ideals in one degree");
  blr->add_option("--k", k_param);
  blr->add_option("--n", n_param);
  blr->add_option("--divisor", divisor_text)->required();
  single(blr, [&](const Fixture& fx, const TcrContext& ctx) {
    return left_right_checks(ctx, k_param, fx.parse_divisor(divisor_text), n_param);
  });
  auto* bc = bl->add_subcommand("c1c2", "bar-level necessary conditions");
  bc->add_option("--divisor", divisor_text);
  bc->add_option("--point", point_name);
  bc->add_option("--k", k_param);
  bc->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      TcrContext ctx = fx.context(std::max(k_param + 2, fx.windows().max_degree));
      const Point q = fx.point(point_name);
      std::vector<Check> cs{point_space_identity(ctx, q), c1_shadow(ctx, fx.parse_divisor(divisor_text), q, k_param)};
      // shadows are never failures unless the computation itself is incoherent
      return emit(g, fx.name(), cs);
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "verification suite");
  ver->require_subcommand(1);
  ver->add_subcommand("all", "run every check on the fixture")->callback([&] {
    action = [&] {
      Fixture fx = load_fixture(g);
      return emit(g, fx.name(), tcrcli::run_suite(fx, {g.upto, g.jobs}));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return action ? action() : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
