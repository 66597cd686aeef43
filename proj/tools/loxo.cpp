#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loxo/acceptance.hpp"
#include "loxo/functions.hpp"
#include "loxo/hypgeom.hpp"
#include "loxo/io.hpp"
#include "loxo/optimize.hpp"
#include "loxo/relations.hpp"
#include "loxo/words.hpp"

namespace {

using namespace loxo;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string format = "table";
  std::string output;
  std::uint64_t seed = 1;
  double tol_bisection = 1e-12;
  double tol_minmax = 1e-4;
  double tol_identity = 1e-9;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void require_rank(int n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw std::invalid_argument("cannot write " + cfg.output);
  f << text;
}

int cmd_psi(const RunConfig& cfg, int n) {
  require_rank(n);
  const PsiTable table = enumerate_psi(n);
  std::ostringstream os;
  if (cfg.format == "json") {
    os << to_json(table).dump(1) << '\n';
  } else if (cfg.format == "csv") {
    write_csv(os, table);
  } else {
    for (int i = 1; i <= table.size(); ++i) os << i << '\t' << to_string(table.at(i)) << '\n';
  }
  emit(cfg, os.str());
  return kOk;
}

struct RelationsArgs {
  int n = 2;
  bool check = false;
  int all_gamma = 0;
  bool specs = false;
  bool dominant = false;
  std::string point;
  int depth = 5;
};

int cmd_relations(const RunConfig& cfg, const RelationsArgs& a) {
  require_rank(a.n);
  const PsiTable table = enumerate_psi(a.n);
  std::vector<Relation> rels = a.all_gamma > 0 ? enumerate_relations_all_gamma(a.n, a.all_gamma)
                                               : enumerate_relations(table, enumerate_gamma_nought(a.n).entries);
  std::ostringstream os;

  if (a.specs || a.dominant || !a.point.empty()) {
    std::vector<FunctionSpec> specs = specs_from_relations(rels, table);
    if (a.dominant) specs = dominant_specs(specs);
    if (!a.point.empty()) {
      const SimplexPoint x = read_point(a.point);
      if (x.size() != table.size()) throw std::invalid_argument("point dimension does not match the Psi table");
      check_simplex(x, cfg.tol_identity);
      const MaxValue m = max_value(specs, x);
      if (cfg.format == "json") {
        Json rows = Json::array();
        for (const auto& f : specs) rows.push_back({{"label", f.label}, {"value", evaluate(f, x)}});
        Json active = Json::array();
        for (int i : m.active) active.push_back(specs[i].label);
        os << Json{{"values", rows}, {"max", m.value}, {"active", active}}.dump(1) << '\n';
      } else if (cfg.format == "csv") {
        write_evaluation_csv(os, specs, x);
      } else {
        for (const auto& f : specs) os << f.label << '\t' << fmt(evaluate(f, x)) << '\n';
        os << "max\t" << fmt(m.value) << '\n';
      }
    } else if (cfg.format == "json") {
      Json rows = Json::array();
      for (const auto& f : specs) rows.push_back(to_json(f));
      os << rows.dump(1) << '\n';
    } else if (cfg.format == "csv") {
      write_csv(os, specs);
    } else {
      for (const auto& f : specs)
        os << f.label << "\tdenom " << f.denom << "\tnumer " << join_indices(f.numer) << '\n';
    }
    emit(cfg, os.str());
    return kOk;
  }

  std::stable_sort(rels.begin(), rels.end(),
                   [](const Relation& x, const Relation& y) { return x.cancellation > y.cancellation; });
  long invalid = 0;
  std::vector<bool> valid(rels.size(), true);
  if (a.check)
    for (std::size_t i = 0; i < rels.size(); ++i)
      if (!validate_relation(rels[i], table, a.depth)) {
        valid[i] = false;
        ++invalid;
      }

  if (cfg.format == "json") {
    Json rows = Json::array();
    for (std::size_t i = 0; i < rels.size(); ++i) {
      Json j = to_json(rels[i]);
      if (a.check) j["valid"] = static_cast<bool>(valid[i]);
      rows.push_back(j);
    }
    os << rows.dump(1) << '\n';
  } else if (cfg.format == "csv") {
    write_csv(os, rels);
  } else {
    for (std::size_t i = 0; i < rels.size(); ++i) {
      os << i + 1 << "\tc=" << rels[i].cancellation << '\t' << to_string(rels[i].gamma) << '\t' << to_string(rels[i].s)
         << "\tS=" << join_indices(rels[i].S, ",");
      if (a.check) os << (valid[i] ? "\tvalid" : "\tINVALID");
      os << '\n';
    }
    if (a.check) os << "checked " << rels.size() << ", invalid " << invalid << '\n';
  }
  emit(cfg, os.str());
  return invalid == 0 ? kOk : kVerifyFailed;
}

int cmd_solve(const RunConfig& cfg, int n, const std::string& method) {
  require_rank(n);
  const bool analytic = method != "numeric", numeric = method != "analytic";
  Json out = Json::object();
  std::ostringstream os;
  SolveResult s;
  MinmaxResult m;
  if (analytic) s = analytic_solve(n, cfg.tol_bisection);
  if (numeric) {
    const PsiTable table = enumerate_psi(n);
    const auto specs = specs_from_relations(enumerate_relations(table, enumerate_gamma_nought(n).entries), table);
    m = minmax_numeric(specs, cfg.seed);
  }
  const bool both = analytic && numeric;
  const double diff = both ? std::abs(s.alpha - m.value) : 0;
  const bool agree = diff <= cfg.tol_minmax;

  if (cfg.format == "json") {
    if (analytic) out["analytic"] = to_json(s);
    if (numeric) out["numeric"] = to_json(m);
    if (both) out["agreement"] = {{"difference", diff}, {"tolerance", cfg.tol_minmax}, {"agree", agree}};
    os << out.dump(1) << '\n';
  } else if (cfg.format == "csv") {
    if (analytic) write_csv(os, s);
    else os << "key,value\nn," << n << '\n';
    if (numeric) os << "numeric_alpha," << fmt(m.value) << '\n';
    if (both) os << "difference," << fmt(diff) << "\nagree," << (agree ? "true" : "false") << '\n';
  } else {
    os << "n\t" << n << '\n';
    if (analytic) {
      os << "alpha\t" << fmt(s.alpha) << "\nresidual\t" << fmt(s.residual) << "\nx1\t" << fmt(s.classes.x1)
         << "\nx2\t" << fmt(s.classes.x2) << "\nx3\t" << fmt(s.classes.x3) << "\nx4\t" << fmt(s.classes.x4)
         << "\nhalf_log_alpha\t" << fmt(s.half_log) << "\njorgensen_bound\t" << fmt(s.jorgensen_bound) << '\n';
    }
    if (numeric) os << "numeric_alpha\t" << fmt(m.value) << '\n';
    if (both) os << "difference\t" << fmt(diff) << "\nagree\t" << (agree ? "true" : "false") << '\n';
  }
  emit(cfg, os.str());
  return agree ? kOk : kVerifyFailed;
}

struct AuditArgs {
  bool schottky = false;
  int count = 1;
  std::string xi, eta;
  double alpha = 0;
};

int cmd_audit(const RunConfig& cfg, const AuditArgs& a) {
  const double alpha = a.alpha > 0 ? a.alpha : analytic_solve(2, cfg.tol_bisection).alpha;
  std::vector<AuditReport> reports;
  std::vector<Json> extra;
  if (a.schottky) {
    if (!a.xi.empty() || !a.eta.empty()) throw std::invalid_argument("--schottky excludes --xi/--eta");
    if (a.count < 1) throw std::invalid_argument("--count must be positive");
    for (int k = 0; k < a.count; ++k) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(k);
      const SchottkySample s = schottky_sample(seed);
      reports.push_back(audit_pair(s.xi, s.eta, alpha));
      extra.push_back({{"seed", seed}, {"certificate", to_json(s.certificate)}});
    }
  } else {
    if (a.xi.empty() || a.eta.empty()) throw std::invalid_argument("audit needs --schottky or both --xi and --eta");
    const Moebius xi = moebius_from_reals(parse_reals(a.xi));
    const Moebius eta = moebius_from_reals(parse_reals(a.eta));
    reports.push_back(audit_pair(xi, eta, alpha));
    extra.push_back(Json::object());
  }

  long violations = 0;
  for (const auto& r : reports)
    if (r.hypothesis_holds && !r.bound_holds) ++violations;

  std::ostringstream os;
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      Json j = extra[i];
      j["report"] = to_json(reports[i]);
      rows.push_back(j);
    }
    os << Json{{"alpha", alpha}, {"reports", rows}, {"violations", violations}}.dump(1) << '\n';
  } else if (cfg.format == "csv") {
    write_csv(os, reports);
  } else {
    os << "i\tjorgensen\thypothesis\tbound\tcomparison\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      os << i + 1 << '\t' << fmt(r.jorgensen) << '\t' << r.hypothesis_holds << '\t' << r.bound_holds << '\t'
         << r.comparison_holds << '\n';
    }
    os << "reports " << reports.size() << ", violations " << violations << '\n';
  }
  emit(cfg, os.str());
  return violations == 0 ? kOk : kVerifyFailed;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  const std::vector<int> ids = criteria_for_suite(suite);
  std::vector<Criterion> results;
  for (int id : ids) results.push_back(run_criterion(id));
  const bool ok = std::all_of(results.begin(), results.end(), [](const Criterion& c) { return c.pass(); });

  std::ostringstream os;
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (const auto& c : results) {
      Json checks = Json::array();
      for (const auto& k : c.checks)
        checks.push_back(
            {{"check", k.name}, {"expected", k.expected}, {"got", k.got}, {"tolerance", k.tolerance}, {"pass", k.pass}});
      rows.push_back({{"id", c.id}, {"suite", c.suite}, {"title", c.title}, {"pass", c.pass()}, {"checks", checks}});
    }
    os << Json{{"suite", suite}, {"pass", ok}, {"criteria", rows}}.dump(1) << '\n';
  } else if (cfg.format == "csv") {
    os << "criterion,check,expected,got,tolerance,status\n";
    for (const auto& c : results)
      for (const auto& k : c.checks)
        os << c.id << ',' << csv_field(k.name) << ',' << csv_field(k.expected) << ',' << csv_field(k.got) << ','
           << csv_field(k.tolerance) << ',' << (k.pass ? "PASS" : "FAIL") << '\n';
  } else {
    for (const auto& c : results) {
      os << (c.pass() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << '\n';
      for (const auto& k : c.checks)
        os << "  " << (k.pass ? "ok  " : "FAIL") << "  " << k.name << "  expected " << k.expected << "  got " << k.got
           << (k.tolerance.empty() ? "" : "  tol " + k.tolerance) << '\n';
    }
    os << (ok ? "all criteria passed" : "verification failed") << '\n';
  }
  emit(cfg, os.str());
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Displacement bounds for two-generator loxodromic groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML configuration file");

  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  app.add_option("--output", cfg.output, "Write output to this file instead of stdout");
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--tol-bisection", cfg.tol_bisection, "Bisection tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol-minmax", cfg.tol_minmax, "Numeric/analytic agreement tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol-identity", cfg.tol_identity, "Identity check tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  int psi_n = 2;
  auto* psi = app.add_subcommand("psi", "List the Psi words");
  psi->add_option("--n", psi_n, "Rank")->required();

  RelationsArgs rel;
  auto* relations = app.add_subcommand("relations", "Enumerate group relations and displacement functions");
  relations->add_option("--n", rel.n, "Rank")->required();
  relations->add_flag("--check", rel.check, "Validate every relation by word enumeration");
  relations->add_option("--depth", rel.depth, "Word length used by --check")->capture_default_str();
  relations->add_option("--all-gamma", rel.all_gamma, "Use every reduced gamma up to this length");
  relations->add_flag("--specs", rel.specs, "Emit the compiled displacement functions");
  relations->add_flag("--dominant", rel.dominant, "Emit only the dominant functions");
  relations->add_option("--point", rel.point, "Evaluate the functions at the point in this file");

  int solve_n = 2;
  std::string method = "analytic";
  auto* solve = app.add_subcommand("solve", "Compute the min-max constant");
  solve->add_option("--n", solve_n, "Rank")->required();
  solve->add_option("--method", method, "Solver")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}))
      ->capture_default_str();

  AuditArgs aud;
  auto* audit = app.add_subcommand("audit", "Audit the displacement bound on explicit or sampled pairs");
  audit->add_flag("--schottky", aud.schottky, "Sample Schottky-certified pairs");
  audit->add_option("--count", aud.count, "Number of sampled pairs")->capture_default_str();
  audit->add_option("--xi", aud.xi, "xi as 8 reals: Re a, Im a, Re b, Im b, Re c, Im c, Re d, Im d");
  audit->add_option("--eta", aud.eta, "eta as 8 reals");
  audit->add_option("--alpha", aud.alpha, "Constant alpha (default: the n=2 analytic value)");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--suite", suite, "Suite")
      ->check(CLI::IsMember({"all", "relations", "optimize", "geometry"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*psi) return cmd_psi(cfg, psi_n);
    if (*relations) return cmd_relations(cfg, rel);
    if (*solve) return cmd_solve(cfg, solve_n, method);
    if (*audit) return cmd_audit(cfg, aud);
    if (*verify) return cmd_verify(cfg, suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
