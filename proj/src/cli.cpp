#include "mahler/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mahler/error.hpp"
#include "mahler/experiments.hpp"
#include "mahler/genfun.hpp"
#include "mahler/mahler.hpp"
#include "mahler/parse.hpp"
#include "mahler/spectra.hpp"

namespace mahler::cli {

namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

enum class Format { json, csv };

struct JobConfig {
  std::string group;
  std::string group_b;
  std::string poly;
  std::optional<double> lambda;
  double lambda_imag = 0.0;
  double epsilon = 1e-10;
  std::int64_t grid = 0;
  std::size_t n = 10;
  bool general = false;
  bool continuation = false;
  std::string method = "auto";
  std::string chain;
  std::vector<std::int64_t> params;
  bool coprime = false;
  std::string kind;
  int d = 4;
  int l = 2;
  Format format = Format::json;
  std::string out_path;
};

json number(double v) {
  if (!std::isfinite(v)) return v > 0 ? json("inf") : v < 0 ? json("-inf") : json("nan");
  return std::stod(format_number(v));
}

json exact(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

json exact(const GaussianRational& c) {
  if (c.is_real()) return exact(c.real());
  return c.str();
}

json exact(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

std::string csv_exact(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// The artifact: JSON object or CSV table, written in one go.
struct Artifact {
  json object;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

json envelope(const std::string& command, const JobConfig& cfg, const std::string& group_name,
              const std::string& poly) {
  json j;
  j["command"] = command;
  j["group"] = group_name.empty() ? json(nullptr) : json(group_name);
  j["poly"] = poly.empty() ? json(nullptr) : json(poly);
  j["lambda"] = cfg.lambda ? number(*cfg.lambda) : json(nullptr);
  j["method"] = nullptr;
  j["value"] = nullptr;
  j["error_bound"] = nullptr;
  j["extra"] = json::object();
  return j;
}

void fill_measure(json& j, const MeasureResult& r) {
  j["method"] = to_string(r.method);
  j["value"] = number(r.value);
  j["error_bound"] = number(r.error_bound);
  j["extra"]["imaginary_discard"] = number(r.imaginary_discard);
  if (r.method == Method::series) j["extra"]["terms"] = r.terms;
}

double require_lambda(const JobConfig& cfg, const char* command) {
  if (!cfg.lambda) throw DomainError(fmt::format("{} needs --lambda", command));
  return *cfg.lambda;
}

SeriesOptions series_options(const JobConfig& cfg) {
  SeriesOptions options;
  options.epsilon = cfg.epsilon;
  return options;
}

Artifact cmd_measure(const JobConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group);
  const PolyExpr poly = parse_poly(cfg.poly);
  Artifact a{envelope("measure", cfg, g.name(), format_poly(poly)), {}, {}};
  const SeriesOptions options = series_options(cfg);
  MeasureResult r;
  if (!cfg.lambda) {
    if (!g.is_finite() && !cfg.general)
      throw DomainError("measure on an infinite group needs --lambda, or --general for m(Q)");
    r = measure_general_in(g, poly, options);
    a.object["extra"]["measure"] = "m(Q)";
  } else {
    const double lambda = *cfg.lambda;
    std::string method = cfg.method;
    if (method == "auto") method = g.is_finite() ? "finite" : "series";
    if (method == "finite") {
      if (!g.is_finite()) throw DomainError("--method finite needs a finite group");
      r = *g.order() <= 24 ? mahler_finite(realize<GaussianRational>(g, poly), lambda, cfg.continuation)
                           : mahler_finite(realize<cd>(g, poly), lambda, cfg.continuation);
    } else if (method == "series") {
      r = mahler_series(realize<GaussianRational>(g, poly), lambda, options);
    } else if (method == "quadrature") {
      r = mahler_torus(realize<cd>(g, poly), lambda, cfg.grid);
      a.object["extra"]["grid"] = cfg.grid == 0 ? default_torus_grid(static_cast<std::size_t>(g.generator_count()))
                                                : cfg.grid;
    } else {
      throw DomainError("unknown --method '" + method + "'");
    }
    a.object["extra"]["measure"] = "m(P,lambda)";
  }
  fill_measure(a.object, r);
  return a;
}

Artifact cmd_coeffs(const JobConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group);
  const PolyExpr poly = parse_poly(cfg.poly);
  Artifact a{envelope("coeffs", cfg, g.name(), format_poly(poly)), {"n", "a_n"}, {}};
  const auto coeffs = power_constant_coeffs(realize<GaussianRational>(g, poly), cfg.n);
  json list = json::array();
  for (std::size_t i = 0; i < coeffs.values.size(); ++i) {
    list.push_back(exact(coeffs.values[i]));
    a.csv_rows.push_back({std::to_string(i), csv_exact(list.back())});
  }
  a.object["method"] = "power";
  a.object["extra"]["coefficients"] = std::move(list);
  a.object["extra"]["l1_bound"] = number(coeffs.l1_bound);
  return a;
}

Artifact cmd_spectrum(const JobConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group);
  const PolyExpr poly = parse_poly(cfg.poly);
  Artifact a{envelope("spectrum", cfg, g.name(), format_poly(poly)), {"index", "eigenvalue"}, {}};
  const Spectrum s = hermitian_eigenvalues(cayley_adjacency(realize<cd>(g, poly)));
  json list = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    list.push_back(number(s.eigenvalues[i]));
    a.csv_rows.push_back({std::to_string(i), format_number(s.eigenvalues[i])});
  }
  a.object["method"] = "jacobi";
  a.object["value"] = number(s.spectral_radius());
  a.object["extra"]["eigenvalues"] = std::move(list);
  return a;
}

Artifact cmd_u(const JobConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group);
  const PolyExpr poly = parse_poly(cfg.poly);
  Artifact a{envelope("u", cfg, g.name(), format_poly(poly)), {"n", "a_n"}, {}};
  const cd lambda{require_lambda(cfg, "u"), cfg.lambda_imag};
  std::string method = cfg.method == "auto" ? (g.is_finite() ? "rational" : "series") : cfg.method;
  cd value;
  if (method == "rational") {
    if (!g.is_finite()) throw DomainError("--method rational needs a finite group");
    value = u_rational(realize<GaussianRational>(g, poly)).evaluate(lambda);
  } else if (method == "series") {
    value = u_series(realize<GaussianRational>(g, poly), lambda, cfg.epsilon);
  } else {
    throw DomainError("unknown --method '" + method + "'");
  }
  a.object["method"] = method;
  a.object["value"] = number(value.real());
  a.object["extra"]["imag"] = number(value.imag());
  a.object["extra"]["lambda_imag"] = number(cfg.lambda_imag);
  const auto coeffs = power_constant_coeffs(realize<GaussianRational>(g, poly), cfg.n);
  json list = json::array();
  for (std::size_t i = 0; i < coeffs.values.size(); ++i) {
    list.push_back(exact(coeffs.values[i]));
    a.csv_rows.push_back({std::to_string(i), csv_exact(list.back())});
  }
  a.object["extra"]["coefficients"] = std::move(list);
  return a;
}

Artifact cmd_compare(const JobConfig& cfg) {
  const GroupSpec ga = parse_group(cfg.group);
  const GroupSpec gb = parse_group(cfg.group_b);
  const PolyExpr poly = parse_poly(cfg.poly);
  Artifact a{envelope("compare", cfg, ga.name() + " vs " + gb.name(), format_poly(poly)), {}, {}};
  const Comparison c = compare_groups(ga, gb, poly, cfg.lambda, series_options(cfg));
  a.object["method"] = to_string(c.a.method) + "/" + to_string(c.b.method);
  a.object["value"] = number(c.difference);
  a.object["error_bound"] = number(c.a.error_bound + c.b.error_bound);
  a.object["extra"]["value_a"] = number(c.a.value);
  a.object["extra"]["value_b"] = number(c.b.value);
  a.object["extra"]["verdict"] = to_string(c.verdict);
  a.csv_header = {"group", "value", "method", "error_bound"};
  a.csv_rows = {{ga.name(), format_number(c.a.value), to_string(c.a.method), format_number(c.a.error_bound)},
                {gb.name(), format_number(c.b.value), to_string(c.b.method), format_number(c.b.error_bound)}};
  return a;
}

Artifact cmd_converge(const JobConfig& cfg) {
  const PolyExpr poly = parse_poly(cfg.poly);
  const double lambda = require_lambda(cfg, "converge");
  if (cfg.params.empty()) throw DomainError("converge needs --params");
  ConvergenceReport report;
  if (cfg.chain == "abelian") {
    const GroupSpec g = parse_group(cfg.group.empty() ? "Z^2" : cfg.group);
    const std::size_t l = static_cast<std::size_t>(g.generator_count());
    std::vector<std::vector<std::int64_t>> moduli;
    for (const auto p : cfg.params) {
      std::vector<std::int64_t> m(l, p);
      if (cfg.coprime)
        for (std::size_t i = 0; i < l; ++i) m[i] = p + static_cast<std::int64_t>(i);
      moduli.push_back(std::move(m));
    }
    report = converge_abelian(realize<cd>(g, poly), lambda, moduli, series_options(cfg));
  } else {
    QuotientChain chain;
    if (cfg.chain == "dihedral")
      chain = QuotientChain::dihedral;
    else if (cfg.chain == "dicyclic")
      chain = QuotientChain::dicyclic;
    else if (cfg.chain == "zxzm")
      chain = QuotientChain::zxzm;
    else
      throw DomainError("unknown --chain '" + cfg.chain + "' (abelian, dihedral, dicyclic, zxzm)");
    report = converge_quotients(chain, poly, lambda, cfg.params, series_options(cfg));
  }
  Artifact a{envelope("converge", cfg, report.limit_group, format_poly(poly)),
             {"parameter", "group", "value", "gap", "method", "q", "uniform_gap"},
             {}};
  a.object["method"] = to_string(report.limit_method);
  a.object["value"] = number(report.limit);
  a.object["error_bound"] = number(report.limit_error);
  a.object["extra"]["chain"] = cfg.chain;
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["parameter"] = r.parameter;
    row["group"] = r.label;
    row["value"] = number(r.value);
    row["gap"] = number(r.gap);
    row["method"] = to_string(r.method);
    row["q"] = r.q ? json(r.q->str()) : json(nullptr);
    row["uniform_gap"] = r.uniform_gap ? number(*r.uniform_gap) : json(nullptr);
    rows.push_back(row);
    a.csv_rows.push_back({std::to_string(r.parameter), r.label, format_number(r.value), format_number(r.gap),
                          to_string(r.method), r.q ? r.q->str() : "",
                          r.uniform_gap ? format_number(*r.uniform_gap) : ""});
  }
  a.object["extra"]["rows"] = std::move(rows);
  return a;
}

Artifact cmd_agree_depth(const JobConfig& cfg) {
  const GroupSpec gm = parse_group(cfg.group);
  const GroupSpec ginf = parse_group(cfg.group_b);
  const PolyExpr poly = parse_poly(cfg.poly);
  const AgreementReport report = agreement_depth(gm, ginf, poly, cfg.n);
  Artifact a{envelope("agree-depth", cfg, gm.name() + " vs " + ginf.name(), format_poly(poly)),
             {"n", "a_n_m", "a_n"},
             {}};
  a.object["method"] = "power";
  a.object["value"] = report.first_disagreement ? json(*report.first_disagreement) : json(nullptr);
  a.object["extra"]["first_disagreement"] =
      report.first_disagreement ? json(*report.first_disagreement) : json("none up to " + std::to_string(cfg.n));
  json list = json::array();
  for (std::size_t i = 0; i < report.coefficients.size(); ++i) {
    const auto& [am, ai] = report.coefficients[i];
    list.push_back(json::array({exact(am), exact(ai)}));
    a.csv_rows.push_back({std::to_string(i), csv_exact(exact(am)), csv_exact(exact(ai))});
  }
  a.object["extra"]["coefficients"] = std::move(list);
  return a;
}

Artifact cmd_genfun(const JobConfig& cfg) {
  Artifact a{envelope("genfun", cfg, "", ""), {"n", "c_n"}, {}};
  a.object["method"] = "closed-form";
  a.object["extra"]["kind"] = cfg.kind;
  json list = json::array();
  auto push = [&](const json& v) {
    a.csv_rows.push_back({std::to_string(list.size()), csv_exact(v)});
    list.push_back(v);
  };
  std::optional<AlgebraicSeries> series;
  if (cfg.kind == "g") {
    series = g_d(cfg.d);
  } else if (cfg.kind == "free") {
    series = u_free(cfg.l);
  } else if (cfg.kind == "p2") {
    series = u_free_product_P2(cfg.l);
  } else if (cfg.kind == "psl2") {
    series = u_psl2(Psl2Variant::x_plus_y_plus_yinv);
  } else if (cfg.kind == "psl2-2x") {
    series = u_psl2(Psl2Variant::two_x_plus_y_plus_yinv);
  } else if (cfg.kind == "z2") {
    for (const auto& c : u_z2_hypergeom(cfg.n)) push(exact(c));
  } else if (cfg.kind == "multinomial-p1" || cfg.kind == "multinomial-p2") {
    const auto kind = cfg.kind == "multinomial-p1" ? MultinomialKind::P1 : MultinomialKind::P2;
    for (std::size_t i = 0; i <= cfg.n; ++i) push(exact(multinomial_traces(cfg.l, kind, static_cast<int>(i))));
  } else if (cfg.kind == "binomial") {
    bool all = true;
    a.csv_header = {"n", "lhs", "rhs", "holds"};
    for (std::size_t i = 0; i <= cfg.n; ++i) {
      const BinomialRelation r = binomial_relation(cfg.l, static_cast<int>(i));
      all = all && r.holds();
      list.push_back(json::array({exact(r.lhs), exact(r.rhs)}));
      a.csv_rows.push_back({std::to_string(i), r.lhs.get_str(), r.rhs.get_str(), r.holds() ? "true" : "false"});
    }
    a.object["extra"]["holds"] = all;
  } else {
    throw DomainError("unknown --kind '" + cfg.kind +
                      "' (g, free, p2, psl2, psl2-2x, z2, multinomial-p1, multinomial-p2, binomial)");
  }
  if (series) {
    a.object["extra"]["name"] = series->name();
    for (const auto& c : series->coeffs(cfg.n)) push(exact(c));
    if (cfg.lambda) {
      const cd v = (*series)(cd{*cfg.lambda, cfg.lambda_imag});
      a.object["value"] = number(v.real());
      a.object["extra"]["imag"] = number(v.imag());
    }
  }
  a.object["extra"]["coefficients"] = std::move(list);
  return a;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const Artifact& a, Format format, std::ostream& out) {
  if (format == Format::json || a.csv_header.empty()) {
    out << a.object.dump(2) << '\n';
    return;
  }
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
    out << '\n';
  };
  line(a.csv_header);
  for (const auto& row : a.csv_rows) line(row);
}

int report_error(std::ostream& out, int code, const std::string& kind, const std::string& message,
                 std::optional<std::size_t> position = std::nullopt) {
  json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  if (position) j["error"]["position"] = *position;
  j["error"]["exit_code"] = code;
  out << j.dump(2) << '\n';
  return code;
}

void add_common(CLI::App* sub, JobConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}}));
  sub->add_option("--out", cfg.out_path, "Write the artifact to this path instead of stdout");
  sub->add_option("--eps", cfg.epsilon, "Series tail tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

std::string format_number(double value) { return fmt::format("{:.15g}", value); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig cfg;
  CLI::App app{"Generalized Mahler measures over group rings", "mahler"};
  app.require_subcommand(1);

  auto* measure = app.add_subcommand("measure", "m(P, lambda), or m(Q) when --lambda is absent");
  measure->add_option("--group", cfg.group, "Group specifier")->required();
  measure->add_option("--poly", cfg.poly, "Polynomial")->required();
  measure->add_option("--lambda", cfg.lambda, "Real lambda");
  measure->add_flag("--general", cfg.general, "Compute m(Q) by the series route on an infinite group");
  measure->add_flag("--continuation", cfg.continuation, "Finite groups: accept any non-singular lambda");
  measure->add_option("--method", cfg.method, "auto, finite, series or quadrature");
  measure->add_option("--grid", cfg.grid, "Torus grid size per dimension (quadrature)");
  add_common(measure, cfg);

  auto* coeffs = app.add_subcommand("coeffs", "Constant coefficients a_n = [P^n]_0");
  coeffs->add_option("--group", cfg.group)->required();
  coeffs->add_option("--poly", cfg.poly)->required();
  coeffs->add_option("--n", cfg.n, "Largest n")->check(CLI::Range(0, 100000));
  add_common(coeffs, cfg);

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the weighted Cayley graph");
  spectrum->add_option("--group", cfg.group)->required();
  spectrum->add_option("--poly", cfg.poly)->required();
  add_common(spectrum, cfg);

  auto* u = app.add_subcommand("u", "Generating function u(P, lambda)");
  u->add_option("--group", cfg.group)->required();
  u->add_option("--poly", cfg.poly)->required();
  u->add_option("--lambda", cfg.lambda)->required();
  u->add_option("--lambda-imag", cfg.lambda_imag, "Imaginary part of lambda");
  u->add_option("--method", cfg.method, "auto, rational or series");
  u->add_option("--n", cfg.n, "Number of Taylor coefficients to list")->check(CLI::Range(0, 100000));
  add_common(u, cfg);

  auto* compare = app.add_subcommand("compare", "Compare a measure across two groups");
  compare->add_option("--group", cfg.group)->required();
  compare->add_option("--group-b", cfg.group_b)->required();
  compare->add_option("--poly", cfg.poly)->required();
  compare->add_option("--lambda", cfg.lambda, "Compare m(P, lambda); without it m(Q)");
  add_common(compare, cfg);

  auto* converge = app.add_subcommand("converge", "Finite approximations against the infinite group");
  converge->add_option("--chain", cfg.chain, "abelian, dihedral, dicyclic or zxzm")->required();
  converge->add_option("--group", cfg.group, "Z^l for the abelian chain (default Z^2)");
  converge->add_option("--poly", cfg.poly)->required();
  converge->add_option("--lambda", cfg.lambda)->required();
  converge->add_option("--params", cfg.params, "Group sizes G or m")->delimiter(',')->required();
  converge->add_flag("--coprime", cfg.coprime, "Abelian chain: use moduli (G, G+1, ...) instead of (G, G, ...)");
  add_common(converge, cfg);

  auto* agree = app.add_subcommand("agree-depth", "First n where a_n differs between two groups");
  agree->add_option("--group", cfg.group, "Finite quotient")->required();
  agree->add_option("--group-b", cfg.group_b, "Infinite group")->required();
  agree->add_option("--poly", cfg.poly)->required();
  agree->add_option("--n", cfg.n, "Largest n")->check(CLI::Range(0, 100000));
  add_common(agree, cfg);

  auto* genfun = app.add_subcommand("genfun", "Closed-form generating functions and trace identities");
  genfun->add_option("--kind", cfg.kind,
                     "g, free, p2, psl2, psl2-2x, z2, multinomial-p1, multinomial-p2 or binomial")
      ->required();
  genfun->add_option("--d", cfg.d, "Tree degree for g");
  genfun->add_option("--l", cfg.l, "Number of variables");
  genfun->add_option("--n", cfg.n, "Largest index")->check(CLI::Range(0, 100000));
  genfun->add_option("--lambda", cfg.lambda, "Evaluate the closed form here");
  genfun->add_option("--lambda-imag", cfg.lambda_imag);
  add_common(genfun, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return report_error(out, parse_error, "usage", e.what());
  }

  std::ostringstream buffer;
  std::ostream& sink = cfg.out_path.empty() ? out : buffer;
  try {
    Artifact artifact;
    if (measure->parsed())
      artifact = cmd_measure(cfg);
    else if (coeffs->parsed())
      artifact = cmd_coeffs(cfg);
    else if (spectrum->parsed())
      artifact = cmd_spectrum(cfg);
    else if (u->parsed())
      artifact = cmd_u(cfg);
    else if (compare->parsed())
      artifact = cmd_compare(cfg);
    else if (converge->parsed())
      artifact = cmd_converge(cfg);
    else if (agree->parsed())
      artifact = cmd_agree_depth(cfg);
    else
      artifact = cmd_genfun(cfg);
    emit(artifact, cfg.format, sink);
  } catch (const ParseError& e) {
    return report_error(out, parse_error, "parse", e.what(), e.position());
  } catch (const DomainError& e) {
    return report_error(out, domain_error, "domain", e.what());
  } catch (const ResourceError& e) {
    return report_error(out, resource_error, "resource", e.what());
  } catch (const Error& e) {
    return report_error(out, failure, "error", e.what());
  }

  if (!cfg.out_path.empty()) {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
      err << "cannot open " << cfg.out_path << '\n';
      return report_error(out, failure, "io", "cannot open " + cfg.out_path);
    }
    file << buffer.str();
  }
  return ok;
}

}  // namespace mahler::cli
