#include "loxo/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace loxo {

namespace {

Json point_json(const Point3& z) { return Json::array({z.w.real(), z.w.imag(), z.t}); }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

Json to_json(const PsiTable& table) {
  Json entries = Json::array();
  for (int i = 1; i <= table.size(); ++i) entries.push_back({{"idx", i}, {"word", to_string(table.at(i))}});
  return {{"n", table.n}, {"entries", entries}};
}

Json to_json(const GammaNought& gammas) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < gammas.entries.size(); ++i)
    entries.push_back({{"idx", i + 1}, {"word", to_string(gammas.entries[i])}});
  return {{"n", gammas.n}, {"entries", entries}};
}

Json to_json(const Relation& rel) {
  Json residue = Json::array();
  for (const Word& w : rel.residue) residue.push_back(to_string(w));
  return {{"gamma", to_string(rel.gamma)},
          {"s", to_string(rel.s)},
          {"S", rel.S},
          {"residue", residue},
          {"cancellation", rel.cancellation}};
}

Json to_json(const FunctionSpec& spec) { return {{"label", spec.label}, {"denom", spec.denom}, {"numer", spec.numer}}; }

Json to_json(const SolveResult& r) {
  return {{"n", r.n},
          {"alpha", r.alpha},
          {"poly", std::vector<double>(r.polynomial.coeffs.data(), r.polynomial.coeffs.data() + r.polynomial.coeffs.size())},
          {"xstar_classes", {{"x1", r.classes.x1}, {"x2", r.classes.x2}, {"x3", r.classes.x3}, {"x4", r.classes.x4}}},
          {"half_log", r.half_log},
          {"bound", r.jorgensen_bound},
          {"residual", r.residual}};
}

Json to_json(const MinmaxResult& r) {
  return {{"value", r.value},
          {"descent_value", r.descent_value},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"polished", r.polished},
          {"best_start", r.best_start},
          {"x", std::vector<double>(r.x.data(), r.x.data() + r.x.size())}};
}

Json to_json(const AuditReport& r) {
  Json disp = Json::object();
  for (const auto& [k, v] : r.displacements) disp[k] = v;
  Json table = Json::object();
  for (const auto& [k, v] : r.gamma_table) table[k] = v;
  return {{"jorgensen", r.jorgensen},
          {"z1", point_json(r.z1)},
          {"z2", point_json(r.z2)},
          {"disp", disp},
          {"hypothesis", r.hypothesis_holds},
          {"bound", r.bound_holds},
          {"comparison", r.comparison_holds},
          {"gamma_hypothesis", r.gamma_hypothesis_holds},
          {"gamma_disp", table},
          {"threshold", r.threshold},
          {"bound_value", r.bound}};
}

Json to_json(const SchottkyCertificate& cert) {
  Json circles = Json::array();
  for (const Circle& c : cert.circles)
    circles.push_back({{"center", {c.center.real(), c.center.imag()}}, {"radius", c.radius}});
  return {{"circles", circles}, {"min_gap", cert.min_gap}};
}

PsiTable psi_from_json(const Json& j) {
  PsiTable t;
  t.n = j.at("n").get<int>();
  for (const Json& e : j.at("entries")) {
    const int idx = e.at("idx").get<int>();
    if (idx != t.size() + 1) throw std::invalid_argument("psi table indices must be consecutive");
    t.entries.push_back(parse_word(e.at("word").get<std::string>()));
    t.index_of[t.entries.back()] = idx;
  }
  return t;
}

Relation relation_from_json(const Json& j, const PsiTable& table) {
  Relation r;
  r.gamma = parse_word(j.at("gamma").get<std::string>());
  r.s = parse_word(j.at("s").get<std::string>());
  r.s_index = table.index(r.s);
  r.S = j.at("S").get<std::vector<int>>();
  if (j.contains("residue"))
    for (const Json& w : j.at("residue")) r.residue.push_back(parse_word(w.get<std::string>()));
  r.cancellation = j.at("cancellation").get<int>();
  return r;
}

FunctionSpec spec_from_json(const Json& j) {
  FunctionSpec f;
  f.label = j.at("label").get<std::string>();
  f.denom = j.at("denom").get<int>();
  f.numer = j.at("numer").get<std::vector<int>>();
  return f;
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

std::string join_indices(const std::vector<int>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

void write_csv(std::ostream& os, const PsiTable& table) {
  os << "idx,word\n";
  for (int i = 1; i <= table.size(); ++i) os << i << ',' << csv_field(to_string(table.at(i))) << '\n';
}

void write_csv(std::ostream& os, const std::vector<Relation>& rels) {
  os << "l,gamma,s,S,residue,cancellation\n";
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const Relation& r = rels[i];
    std::string residue;
    for (std::size_t k = 0; k < r.residue.size(); ++k) residue += (k ? ";" : "") + to_string(r.residue[k]);
    os << i + 1 << ',' << csv_field(to_string(r.gamma)) << ',' << csv_field(to_string(r.s)) << ','
       << join_indices(r.S) << ',' << csv_field(residue) << ',' << r.cancellation << '\n';
  }
}

void write_csv(std::ostream& os, const std::vector<FunctionSpec>& specs) {
  os << "label,denom,numer\n";
  for (const FunctionSpec& f : specs) os << f.label << ',' << f.denom << ',' << join_indices(f.numer) << '\n';
}

void write_evaluation_csv(std::ostream& os, const std::vector<FunctionSpec>& specs, const SimplexPoint& x) {
  os << "label,value\n";
  for (const FunctionSpec& f : specs) os << f.label << ',' << fmt(evaluate(f, x)) << '\n';
}

void write_csv(std::ostream& os, const SolveResult& r) {
  os << "key,value\n";
  os << "n," << r.n << '\n' << "alpha," << fmt(r.alpha) << '\n';
  os << "poly," << csv_field([&] {
    std::string s;
    for (int i = 0; i < r.polynomial.coeffs.size(); ++i) s += (i ? " " : "") + fmt(r.polynomial.coeffs(i));
    return s;
  }()) << '\n';
  os << "x1," << fmt(r.classes.x1) << "\nx2," << fmt(r.classes.x2) << "\nx3," << fmt(r.classes.x3) << "\nx4,"
     << fmt(r.classes.x4) << '\n';
  os << "half_log," << fmt(r.half_log) << "\nbound," << fmt(r.jorgensen_bound) << "\nresidual," << fmt(r.residual)
     << '\n';
}

void write_csv(std::ostream& os, const std::vector<AuditReport>& reports) {
  os << "i,jorgensen,z1_re,z1_im,z1_t,z2_re,z2_im,z2_t,d_eta,d_xiinv_eta_xi,d_xi_eta_xiinv,d_eta_xi_etainv,"
        "d_eta_xi_etainv_z1,hypothesis,bound,comparison,gamma_hypothesis\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const AuditReport& r = reports[i];
    const auto& D = r.displacements;
    os << i + 1 << ',' << fmt(r.jorgensen) << ',' << fmt(r.z1.w.real()) << ',' << fmt(r.z1.w.imag()) << ','
       << fmt(r.z1.t) << ',' << fmt(r.z2.w.real()) << ',' << fmt(r.z2.w.imag()) << ',' << fmt(r.z2.t) << ','
       << fmt(D.at("eta")) << ',' << fmt(D.at("xiinv_eta_xi")) << ',' << fmt(D.at("xi_eta_xiinv")) << ','
       << fmt(D.at("eta_xi_etainv")) << ',' << fmt(D.at("eta_xi_etainv_z1")) << ',' << r.hypothesis_holds << ','
       << r.bound_holds << ',' << r.comparison_holds << ',' << r.gamma_hypothesis_holds << '\n';
  }
}

std::vector<double> parse_reals(const std::string& text) {
  std::string s = text;
  for (char& c : s)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream is(s);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a real number: " + tok);
    }
    if (used != tok.size()) throw std::invalid_argument("not a real number: " + tok);
    out.push_back(v);
  }
  return out;
}

SimplexPoint read_point(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open point file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::vector<double> v = parse_reals(buf.str());
  SimplexPoint x = Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
  check_simplex(x, 1e-9);
  return x;
}

Moebius moebius_from_reals(const std::vector<double>& v) {
  if (v.size() != 8) throw std::invalid_argument("a Moebius map needs 8 reals (re/im of a, b, c, d)");
  const Moebius m{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
  if (std::abs(m.det()) < 1e-14) throw std::invalid_argument("Moebius map is singular");
  return m.normalized();
}

}  // namespace loxo
