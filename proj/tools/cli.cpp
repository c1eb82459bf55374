#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "spherebound/cert_io.hpp"
#include "spherebound/dist_bounds.hpp"
#include "spherebound/graph_bounds.hpp"
#include "spherebound/report.hpp"

namespace spherebound::cli {

namespace {

struct Globals {
  std::string format = "text";
  bool no_timestamp = false;
  bool approx = false;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "spherebound";
  for (const auto& a : args) s += " " + a;
  return s;
}

std::string approx_string(const Rational& r) {
  std::ostringstream out;
  out << std::setprecision(12) << to_double(r);
  return out.str();
}

std::string approx_string(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

class Context {
 public:
  Context(const Globals& globals, std::ostream& out, const std::vector<std::string>& args)
      : globals_(globals), out_(out), report(join(args)) {
    for (const auto& a : args) report.add_input(a);
  }

  Rational rational(const std::string& text) {
    if (text.find_first_of(".eE") != std::string::npos && globals_.approx) report.note_rigor(Rigor::Numeric);
    return parse_rational(text, globals_.approx);
  }

  Certificate certificate(const std::string& path) {
    std::string text = read_text(path);
    report.add_input(text);
    bool decimal = false;
    Certificate c = parse_certificate(text, globals_.approx, &decimal);
    if (decimal) report.note_rigor(Rigor::Numeric);
    return c;
  }

  SphericalCode code(const std::string& file, const std::string& gen) {
    if (!gen.empty()) {
      report.add_input("gen:" + gen);
      return generate_code(gen);
    }
    if (file.empty()) throw UnsupportedError("give a code file or --gen <name>");
    std::string text = read_text(file);
    report.add_input(text);
    std::istringstream in(text);
    return read_code(in);
  }

  /// Polynomial from a file when the argument names one, else the text itself.
  RationalPoly poly(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
      std::string text = read_text(arg);
      report.add_input(text);
      return parse_poly(text.substr(0, text.find_last_not_of(" \n\r\t") + 1));
    }
    return parse_poly(arg);
  }

  int finish(int code) {
    out_ << (globals_.format == "json" ? report.json(!globals_.no_timestamp) : report.text());
    return code;
  }

  std::ostream& out() { return out_; }

 private:
  const Globals& globals_;
  std::ostream& out_;

 public:
  RunReport report;
};

Rational cos_theta_from(Context& ctx, const std::string& theta, const std::string& cos_theta) {
  if (!theta.empty() && !cos_theta.empty()) throw UnsupportedError("give either --theta or --cos-theta");
  if (!theta.empty()) return cos_of_angle(theta);
  if (!cos_theta.empty()) return ctx.rational(cos_theta);
  throw UnsupportedError("--theta or --cos-theta is required");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) items.push_back(item);
  return items;
}

void add_distribution(RunReport& report, const DistanceDistribution& d, Provenance provenance) {
  for (const auto& [t, a] : d.entries) report.add_result("A_{" + to_string(t) + "}", to_string(a), provenance);
}

std::string distribution_string(const DistanceDistribution& d) {
  std::string s = "{";
  bool first = true;
  for (const auto& [t, a] : d.entries) {
    s += (first ? "" : ", ") + to_string(t) + ": " + to_string(a);
    first = false;
  }
  return s + "}";
}

void add_verdicts(RunReport& report, const CertReport& cert) {
  for (const auto& v : cert.verdicts) {
    std::string detail = std::string(to_string(v.verdict.kind));
    if (!v.verdict.detail.empty()) detail += "; " + v.verdict.detail;
    report.add_step(v.condition, v.verdict.passed(), v.verdict.rigor(), detail);
  }
}

// Reference upper bounds for the kissing number in dimension 4 from
// high-degree three-point semidefinite programs, indexed by degree d.
struct Sd4Entry {
  int d;
  const char* value;
};
constexpr Sd4Entry kSd4[] = {
    {7, "24.5797"},     {8, "24.10550859"}, {9, "24.09098111"}, {10, "24.07519774"},
    {11, "24.06628391"}, {12, "24.062758"},  {16, "24.056903"},
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds and certificate checks for spherical codes", "spherebound"};
  Globals g;
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit generated_at from JSON reports");
  app.add_flag("--approx", g.approx, "Accept decimal input; lowers the rigor of the report");
  app.require_subcommand(1);
  std::function<int(Context&)> action;

  // codes
  auto* codes = app.add_subcommand("codes", "Generate, inspect and validate codes")->require_subcommand(1);
  std::string code_name, code_out, code_file, code_gen, theta, cos_theta, t_text;
  auto* codes_gen = codes->add_subcommand("gen", "Write a generated code (e8, 24cell, cross<n>, simplex<n>)");
  codes_gen->add_option("name", code_name)->required();
  codes_gen->add_option("-o,--output", code_out, "Output file (default stdout)");
  codes_gen->callback([&] {
    action = [&](Context& ctx) {
      SphericalCode c = generate_code(code_name);
      if (code_out.empty()) {
        write_code(ctx.out(), c);
      } else {
        std::ofstream f(code_out);
        if (!f) throw Error("cannot write '" + code_out + "'");
        write_code(f, c);
      }
      return kExitOk;
    };
  });
  auto* codes_distro = codes->add_subcommand("distro", "Distance distribution of a code");
  codes_distro->add_option("file", code_file);
  codes_distro->add_option("--gen", code_gen, "Use a generated code");
  codes_distro->add_option("--T", t_text, "Also report A(T)");
  codes_distro->callback([&] {
    action = [&](Context& ctx) {
      SphericalCode c = ctx.code(code_file, code_gen);
      auto d = distance_distribution(c);
      Provenance p = c.mode() == CodeMode::Exact ? Provenance::ComputedExact : Provenance::ComputedNumeric;
      ctx.report.add_step("distance distribution", true, c.mode() == CodeMode::Exact ? Rigor::Rigorous : Rigor::Numeric,
                          c.mode() == CodeMode::Exact ? "exact cosines" : "float cosines binned");
      ctx.report.add_result("N", std::to_string(c.size()), p);
      add_distribution(ctx.report, d, p);
      if (!t_text.empty()) {
        ctx.report.add_result("A(" + t_text + ")", to_string(a_sum(d, IntervalSet::parse(t_text))), p);
      }
      return ctx.finish(kExitOk);
    };
  });
  auto* codes_validate = codes->add_subcommand("validate", "Check the minimal angle of a code");
  codes_validate->add_option("file", code_file);
  codes_validate->add_option("--gen", code_gen, "Use a generated code");
  codes_validate->add_option("--theta", theta, "Angle as a multiple of pi, e.g. pi/3");
  codes_validate->add_option("--cos-theta", cos_theta, "Exact cosine of the angle");
  codes_validate->callback([&] {
    action = [&](Context& ctx) {
      SphericalCode c = ctx.code(code_file, code_gen);
      Rational ct = cos_theta_from(ctx, theta, cos_theta);
      CodeValidation v = validate_code(c, ct);
      std::string detail = "max off-diagonal cosine " + to_string(v.worst_cosine);
      if (v.worst_pair) {
        detail += " at pair (" + std::to_string(v.worst_pair->first) + ", " + std::to_string(v.worst_pair->second) + ")";
      }
      ctx.report.add_step("all cosines <= " + to_string(ct), v.valid,
                          c.mode() == CodeMode::Exact ? Rigor::Rigorous : Rigor::Numeric, detail);
      ctx.report.add_result("valid", v.valid ? "true" : "false", Provenance::ComputedExact);
      return ctx.finish(v.valid ? kExitOk : kExitFailed);
    };
  });

  // caps
  auto* caps = app.add_subcommand("caps", "Cap-restricted quantities")->require_subcommand(1);
  int dim = 0, mu = 0, m = 0;
  std::string g_text, a_text;
  auto* caps_hath = caps->add_subcommand("hath", "hat h = max(h_1, ..., h_mu)");
  caps_hath->add_option("--dim", dim)->required();
  caps_hath->add_option("--cos-theta", cos_theta);
  caps_hath->add_option("--theta", theta);
  caps_hath->add_option("--T", t_text)->required();
  caps_hath->add_option("--g", g_text, "Polynomial file or expression")->required();
  caps_hath->add_option("--mu", mu, "Upper bound for the number of points in a cap");
  caps_hath->callback([&] {
    action = [&](Context& ctx) {
      CapProfile profile{dim, cos_theta_from(ctx, theta, cos_theta), IntervalSet::parse(t_text), ctx.poly(g_text),
                         std::nullopt};
      if (mu > 0) {
        profile.mu = MuBound{mu, MuProvenance::UserSupplied};
      } else {
        profile.mu = mu_for_interval(dim, profile.cos_theta, profile.T);
      }
      ctx.report.add_result("mu", std::to_string(profile.mu->value),
                            profile.mu->provenance == MuProvenance::Derived ? Provenance::ComputedExact
                                                                            : Provenance::Input);
      HatH h = hat_h(profile);
      for (const auto& level : h.levels) {
        std::string what = level.feasibility == Feasibility::Infeasible     ? "empty"
                           : level.feasibility == Feasibility::Undetermined ? "no configuration found"
                                                                            : "best found " + approx_string(level.value);
        ctx.report.add_step("h_" + std::to_string(level.m), true, level.rigor,
                            what + (level.feasibility == Feasibility::Infeasible ? "" : ", upper " + to_string(level.upper)));
      }
      ctx.report.add_result("hat h", to_string(h.value),
                            h.rigor == Rigor::Rigorous ? Provenance::ComputedExact : Provenance::ComputedNumeric);
      ctx.report.add_result("hat h (approx)", approx_string(h.value), Provenance::ComputedNumeric);
      return ctx.finish(kExitOk);
    };
  });
  auto* caps_tm = caps->add_subcommand("tm", "Range of a for which T = [-1, a] holds exactly m cap points");
  caps_tm->add_option("--dim", dim)->required();
  caps_tm->add_option("--cos-theta", cos_theta);
  caps_tm->add_option("--theta", theta);
  caps_tm->add_option("--m", m)->required();
  caps_tm->callback([&] {
    action = [&](Context& ctx) {
      TmInterval r = t_m_interval(dim, cos_theta_from(ctx, theta, cos_theta), m);
      ctx.report.add_result("lo", "-sqrt(" + to_string(r.lo.square) + ")", Provenance::ComputedExact);
      ctx.report.add_result("hi", "-sqrt(" + to_string(r.hi.square) + ")", Provenance::ComputedExact);
      ctx.report.add_result("lo (approx)", approx_string(r.lo.approx()), Provenance::ComputedNumeric);
      ctx.report.add_result("hi (approx)", approx_string(r.hi.approx()), Provenance::ComputedNumeric);
      return ctx.finish(kExitOk);
    };
  });
  auto* caps_mu = caps->add_subcommand("mu", "Derive mu for T = [-1, a]");
  caps_mu->add_option("--dim", dim)->required();
  caps_mu->add_option("--cos-theta", cos_theta);
  caps_mu->add_option("--theta", theta);
  caps_mu->add_option("--a", a_text)->required();
  caps_mu->callback([&] {
    action = [&](Context& ctx) {
      Rational a = ctx.rational(a_text);
      MuBound b = mu_for_interval(dim, cos_theta_from(ctx, theta, cos_theta), IntervalSet::interval(-1, a));
      ctx.report.add_result("mu", std::to_string(b.value), Provenance::ComputedExact);
      return ctx.finish(kExitOk);
    };
  });

  // cert
  auto* cert = app.add_subcommand("cert", "Certificate verification and bounds")->require_subcommand(1);
  std::string cert_file, hath_text = "auto";
  auto* cert_verify = cert->add_subcommand("verify", "Check every condition of a certificate");
  cert_verify->add_option("file", cert_file)->required();
  cert_verify->callback([&] {
    action = [&](Context& ctx) {
      Certificate c = ctx.certificate(cert_file);
      CertReport r = verify(c);
      add_verdicts(ctx.report, r);
      ctx.report.add_result("verified", r.passed() ? "true" : "false", Provenance::ComputedExact);
      return ctx.finish(r.passed() ? kExitOk : kExitFailed);
    };
  });
  auto* cert_bound = cert->add_subcommand("bound", "Bound on the code size from a certificate");
  cert_bound->add_option("file", cert_file)->required();
  cert_bound->add_option("--hath", hath_text, "auto or an exact value");
  cert_bound->add_option("--mu", mu);
  cert_bound->callback([&] {
    action = [&](Context& ctx) {
      Certificate c = ctx.certificate(cert_file);
      CertReport r = verify(c);
      add_verdicts(ctx.report, r);
      if (!r.passed()) return ctx.finish(kExitFailed);
      std::optional<Integer> best;
      Rigor best_rigor = Rigor::Rigorous;
      auto consider = [&](const NBound& b) {
        Rigor rigor = min_rigor(b.rigor, r.rigor());
        ctx.report.add_result(b.method, to_string(b.max_n),
                              rigor == Rigor::Rigorous ? Provenance::ComputedExact : Provenance::ComputedNumeric);
        if (!best || b.max_n < *best) {
          best = b.max_n;
          best_rigor = rigor;
        }
      };
      if (const auto* s = std::get_if<SeparableForm>(&c.form); s && c.T.empty()) {
        try {
          consider(lp_bound(expand(s->s, c.dim), c.cos_theta));
        } catch (const PremiseError&) {
          // The plain LP premises are stronger than the separable class; skip.
        }
      }
      if (c.T.empty()) {
        consider(three_point_bound(c.F111(), c.f0, c.B));
      } else {
        Rational h;
        Rigor hr = Rigor::Rigorous;
        if (hath_text == "auto") {
          HatH hh = certificate_hath(c, mu > 0 ? std::optional<int>(mu) : std::nullopt);
          h = hh.value;
          hr = hh.rigor;
          ctx.report.add_step("hat h", true, hr, "hat h = " + to_string(h));
        } else {
          h = ctx.rational(hath_text);
          hr = Rigor::Heuristic;
          ctx.report.add_result("hat h", to_string(h), Provenance::Input);
        }
        consider(restricted_bound(c.F111(), c.f0, c.B, h, hr));
      }
      ctx.report.note_rigor(best_rigor);
      ctx.report.add_result("max N", to_string(*best),
                            best_rigor == Rigor::Rigorous ? Provenance::ComputedExact : Provenance::ComputedNumeric);
      return ctx.finish(kExitOk);
    };
  });
  auto* cert_emit = cert->add_subcommand("emit", "Re-emit a certificate in canonical form");
  cert_emit->add_option("file", cert_file)->required();
  cert_emit->callback([&] {
    action = [&](Context& ctx) {
      ctx.out() << emit_certificate(ctx.certificate(cert_file));
      return kExitOk;
    };
  });

  // distro
  auto* distro = app.add_subcommand("distro", "Distance distribution bounds")->require_subcommand(1);
  std::string a_list;
  long N = 0;
  std::string support_text;
  auto* distro_ex = distro->add_subcommand("example1", "Uniqueness of the E8 kissing distribution");
  distro_ex->add_option("--a", a_list, "a_1,a_2,a_3,a_4 (or one value for all)");
  distro_ex->callback([&] {
    action = [&](Context& ctx) {
      std::array<Rational, 4> a{Rational(1, 100), Rational(1, 100), Rational(1, 100), Rational(1, 100)};
      if (!a_list.empty()) {
        auto items = split_list(a_list);
        if (items.size() == 1) items.assign(4, items[0]);
        if (items.size() != 4) throw UnsupportedError("--a takes one or four values");
        for (std::size_t i = 0; i < 4; ++i) a[i] = ctx.rational(items[i]);
      }
      E8UniquenessReport r = e8_uniqueness_pipeline(a);
      for (const auto& s : r.steps) ctx.report.add_step(s.name, true, s.rigor, s.detail);
      for (std::size_t i = 0; i < 4; ++i) {
        ctx.report.add_result("P_" + std::to_string(i + 1), to_string(r.P[i]), Provenance::ComputedExact);
      }
      add_distribution(ctx.report, r.distribution, Provenance::ComputedExact);
      ctx.report.add_result("distribution", distribution_string(r.distribution), Provenance::ComputedExact);
      return ctx.finish(kExitOk);
    };
  });
  auto bound_cmd = [&](Direction direction) {
    return [&, direction] {
      action = [&, direction](Context& ctx) {
        Certificate c = ctx.certificate(cert_file);
        if (!t_text.empty()) c.T = IntervalSet::parse(t_text);
        if (!g_text.empty()) c.g = ctx.poly(g_text);
        std::optional<Rational> a;
        if (!a_text.empty()) a = ctx.rational(a_text);
        DistributionBoundResult r;
        if (direction == Direction::Upper) {
          r = distribution_upper(c, N, a);
        } else {
          std::optional<IntervalSet> support;
          if (!support_text.empty()) support = IntervalSet::parse(support_text);
          r = distribution_lower(c, N, a, support);
        }
        Provenance p = r.rigor == Rigor::Rigorous ? Provenance::ComputedExact : Provenance::ComputedNumeric;
        ctx.report.add_step("certificate verified on T = " + r.T.to_string(), true, r.rigor);
        ctx.report.add_result("a", to_string(r.a), a ? Provenance::Input : Provenance::ComputedExact);
        ctx.report.add_result(direction == Direction::Upper ? "Q" : "R", to_string(r.raw), p);
        ctx.report.add_result(direction == Direction::Upper ? "A(T) upper bound" : "A(T) lower bound", to_string(r.rounded), p);
        if (r.forces_zero()) ctx.report.add_result("A_{" + to_string(r.T.parts()[0].lo) + "}", "0", p);
        return ctx.finish(kExitOk);
      };
    };
  };
  for (auto [name, direction] : {std::pair{"upper", Direction::Upper}, std::pair{"lower", Direction::Lower}}) {
    auto* sub = distro->add_subcommand(name, direction == Direction::Upper ? "Upper bound on A(T)" : "Lower bound on A(T)");
    sub->add_option("--cert", cert_file)->required();
    sub->add_option("--N", N)->required();
    sub->add_option("--T", t_text, "Override the certificate's T");
    sub->add_option("--a", a_text, "Premise constant (default: certified from g)");
    sub->add_option("--g", g_text, "Override the certificate's g");
    if (direction == Direction::Lower) sub->add_option("--support", support_text, "Known support of A_t inside T");
    sub->callback(bound_cmd(direction));
  }

  // graph
  auto* graph = app.add_subcommand("graph", "Distance graphs and graph bounds")->require_subcommand(1);
  std::string mode = "nhath", tau_text = "auto", s_text, sweep_text;
  bool export_adj = false;
  auto* graph_build = graph->add_subcommand("build", "Distance graph DG(C, T)");
  graph_build->add_option("--code", code_file);
  graph_build->add_option("--gen", code_gen);
  graph_build->add_option("--T", t_text)->required();
  graph_build->add_option("--g", g_text, "Also report H_g(C, T)");
  graph_build->add_flag("--export", export_adj, "Print the adjacency list");
  graph_build->callback([&] {
    action = [&](Context& ctx) {
      SphericalCode c = ctx.code(code_file, code_gen);
      DistanceGraph G = DistanceGraph::from_code(c, IntervalSet::parse(t_text));
      Provenance p = Provenance::ComputedExact;
      ctx.report.add_result("N", std::to_string(G.size()), p);
      ctx.report.add_result("edges", std::to_string(G.edges().size()), p);
      for (std::size_t i = 1; i <= 3; ++i) ctx.report.add_result("k_" + std::to_string(i), std::to_string(G.k(i)), p);
      ctx.report.add_result("max degree", std::to_string(G.max_degree()), p);
      auto tri = find_triangle(G);
      ctx.report.add_result("triangle free", tri ? "false" : "true", p);
      if (!g_text.empty()) ctx.report.add_result("H_g", to_string(h_g_sum(G, ctx.poly(g_text))), p);
      int code = ctx.finish(kExitOk);
      if (export_adj) ctx.out() << G.adjacency_text();
      return code;
    };
  });
  auto tau_inputs = [&](Context& ctx, const Certificate& c) {
    TauInputs in;
    H1Result h1 = h_1(c.g, c.T);
    in.h1 = h1.upper;
    in.h1_lower = h1.exact ? h1.upper : c.g(h1.argmax_lo);
    LevelBound h2 = h_2(c.g, c.T, c.cos_theta, c.dim);
    if (h2.feasibility != Feasibility::Infeasible) in.h2 = h2.upper;
    HatH hh = certificate_hath(c, mu > 0 ? std::optional<int>(mu) : std::nullopt);
    in.hath = hh.value;
    in.hath_rigor = hh.rigor;
    ctx.report.add_result("h_1", to_string(in.h1), Provenance::ComputedExact);
    ctx.report.add_result("h_2", in.h2 ? to_string(*in.h2) : "empty", Provenance::ComputedNumeric);
    ctx.report.add_result("hat h", to_string(in.hath),
                          hh.rigor == Rigor::Rigorous ? Provenance::ComputedExact : Provenance::ComputedNumeric);
    return in;
  };
  auto parse_mode = [](const std::string& text) {
    if (text == "prop1") return TauMethod::Prop1;
    if (text == "m1") return TauMethod::M1Refined;
    if (text == "nhath") return TauMethod::NHatH;
    throw UnsupportedError("unknown tau mode '" + text + "'");
  };
  auto* graph_tau = graph->add_subcommand("tau", "Upper bound for tau on a distance graph");
  graph_tau->add_option("--code", code_file);
  graph_tau->add_option("--gen", code_gen);
  graph_tau->add_option("--T", t_text)->required();
  graph_tau->add_option("--cert", cert_file, "Certificate supplying g, n and theta")->required();
  graph_tau->add_option("--mode", mode)->check(CLI::IsMember({"prop1", "nhath", "m1"}));
  graph_tau->add_option("--mu", mu);
  graph_tau->callback([&] {
    action = [&](Context& ctx) {
      Certificate c = ctx.certificate(cert_file);
      c.T = IntervalSet::parse(t_text);
      SphericalCode code = ctx.code(code_file, code_gen);
      DistanceGraph G = DistanceGraph::from_code(code, c.T);
      TauInputs in = tau_inputs(ctx, c);
      TauBound t = tau_upper(G, in, parse_mode(mode));
      Rational value = t.value(Rational(static_cast<long>(G.size())));
      ctx.report.add_step("tau bound (" + std::string(to_string(t.method)) + ")", true, t.rigor, t.note);
      ctx.report.add_result("tau upper bound", to_string(value),
                            t.rigor == Rigor::Rigorous ? Provenance::ComputedExact : Provenance::ComputedNumeric);
      return ctx.finish(kExitOk);
    };
  });
  auto* graph_bound_cmd = graph->add_subcommand("bound", "Code size bound with a tau estimate");
  graph_bound_cmd->add_option("--cert", cert_file)->required();
  graph_bound_cmd->add_option("--tau", tau_text, "auto or an exact value");
  graph_bound_cmd->add_option("--mode", mode)->check(CLI::IsMember({"prop1", "nhath", "m1"}));
  graph_bound_cmd->add_option("--code", code_file);
  graph_bound_cmd->add_option("--gen", code_gen);
  graph_bound_cmd->add_option("--mu", mu);
  graph_bound_cmd->callback([&] {
    action = [&](Context& ctx) {
      Certificate c = ctx.certificate(cert_file);
      CertReport r = verify(c);
      add_verdicts(ctx.report, r);
      if (!r.passed()) return ctx.finish(kExitFailed);
      TauBound t;
      std::optional<NBound> restricted;
      if (tau_text == "auto") {
        TauInputs in = tau_inputs(ctx, c);
        TauMethod method = parse_mode(mode);
        if (method == TauMethod::NHatH) {
          t = tau_upper(DistanceGraph::from_edges(0, {}), in, method);
        } else {
          SphericalCode code = ctx.code(code_file, code_gen);
          t = tau_upper(DistanceGraph::from_code(code, c.T), in, method);
        }
        restricted = restricted_bound(c.F111(), c.f0, c.B, in.hath, in.hath_rigor);
      } else {
        t = tau_user(ctx.rational(tau_text));
      }
      NBound b = graph_bound(c.F111(), c.f0, c.B, t);
      Rigor rigor = min_rigor(b.rigor, r.rigor());
      ctx.report.add_step("tau bound (" + std::string(to_string(t.method)) + ")", true, t.rigor, t.note);
      ctx.report.note_rigor(rigor);
      if (restricted) {
        ctx.report.add_result("hat h bound", to_string(restricted->max_n), Provenance::ComputedExact);
        if (b.max_n < restricted->max_n) ctx.report.add_step("graph bound is stronger than the hat h bound", true, rigor);
      }
      ctx.report.add_result("max N", to_string(b.max_n),
                            rigor == Rigor::Rigorous ? Provenance::ComputedExact : Provenance::ComputedNumeric);
      return ctx.finish(kExitOk);
    };
  });
  auto* graph_contact = graph->add_subcommand("contact-lb", "Lower bound on contact graph edges");
  graph_contact->add_option("--cert", cert_file)->required();
  graph_contact->add_option("--N", N)->required();
  graph_contact->add_option("--s", s_text)->required();
  graph_contact->add_option("--a", a_text)->required();
  graph_contact->add_option("--sweep", sweep_text, "Further values of a, comma separated");
  graph_contact->callback([&] {
    action = [&](Context& ctx) {
      Certificate c = ctx.certificate(cert_file);
      Rational s = ctx.rational(s_text);
      std::vector<Rational> as{ctx.rational(a_text)};
      for (const auto& item : split_list(sweep_text)) as.push_back(ctx.rational(item));
      auto first = contact_edge_lower_bound(c, N, s, as.front());
      Provenance p = first.rigor == Rigor::Rigorous ? Provenance::ComputedExact : Provenance::ComputedNumeric;
      ctx.report.add_step("certificate verified on [s - a, s]", true, first.rigor);
      ctx.report.add_result("R_a", to_string(first.R), p);
      ctx.report.add_result("edges lower bound", to_string(first.edges_lower), p);
      ctx.report.add_result("P_a", to_string(first.P), p);
      if (as.size() > 1) {
        for (const auto& e : contact_sweep(c, N, s, as)) {
          ctx.report.add_result("sweep a = " + to_string(e.a),
                                e.bound ? "edges >= " + to_string(e.bound->edges_lower) : "refused: " + e.failure, p);
        }
      }
      return ctx.finish(kExitOk);
    };
  });

  // refdata
  auto* refdata = app.add_subcommand("refdata", "Bundled reference data")->require_subcommand(1);
  auto* sd4 = refdata->add_subcommand("sd4", "Three-point SDP upper bounds for the kissing number in dimension 4");
  sd4->callback([&] {
    action = [&](Context& ctx) {
      ctx.report.add_step("reference values, not computed", true, Rigor::Heuristic,
                          "published SDP bounds s_d(4) >= k(4) = 24; shipped as metadata only");
      for (const auto& e : kSd4) {
        ctx.report.add_result("s_" + std::to_string(e.d) + "(4)", e.value, Provenance::Reference);
      }
      return ctx.finish(kExitOk);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Context ctx(g, out, args);
    return action(ctx);
  } catch (const spherebound::ParseError& e) {
    // what() already carries the line and column when known.
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PremiseError& e) {
    err << "failed: " << e.what() << '\n';
    return kExitFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace spherebound::cli
