#include "loxo/hypgeom.hpp"

#include <algorithm>
#include <numbers>
#include <random>

namespace loxo {

using Complex = std::complex<double>;

namespace {

double entry_scale(const Moebius& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d), 1.0});
}

bool near(const Moebius& m, const Moebius& n, double tol) {
  const double s = std::max(entry_scale(m), entry_scale(n));
  return std::abs(m.a - n.a) <= tol * s && std::abs(m.b - n.b) <= tol * s && std::abs(m.c - n.c) <= tol * s &&
         std::abs(m.d - n.d) <= tol * s;
}

Moebius negate(const Moebius& m) { return {-m.a, -m.b, -m.c, -m.d}; }

}  // namespace

MoebiusClass classify(const Moebius& m0, double tol) {
  const Moebius m = m0.normalized();
  const Moebius id = Moebius::identity();
  if (near(m, id, tol) || near(m, negate(id), tol)) return MoebiusClass::Identity;
  const Complex t2 = m.trace() * m.trace();
  const double scale = 1 + std::abs(t2);
  if (std::abs(t2.imag()) > tol * scale) return MoebiusClass::Loxodromic;
  const double r = t2.real();
  if (std::abs(r - 4) <= tol * scale) return MoebiusClass::Parabolic;
  if (r >= 0 && r < 4) return MoebiusClass::Elliptic;
  return MoebiusClass::Loxodromic;
}

std::string to_string(MoebiusClass c) {
  switch (c) {
    case MoebiusClass::Loxodromic: return "loxodromic";
    case MoebiusClass::Elliptic: return "elliptic";
    case MoebiusClass::Parabolic: return "parabolic";
    case MoebiusClass::Identity: return "identity";
  }
  return "unknown";
}

LoxodromicData loxodromic_data(const Moebius& m0) {
  if (classify(m0) != MoebiusClass::Loxodromic) throw std::invalid_argument("loxodromic_data: map is not loxodromic");
  const Moebius m = m0.normalized();
  const Complex tr = m.trace();
  const Complex s = std::sqrt(tr * tr - 4.0);
  LoxodromicData r;
  r.u = 0.5 * (tr + s);
  if (std::abs(r.u) < 1) r.u = 0.5 * (tr - s);
  r.T = 2 * std::log(std::abs(r.u));
  r.theta = std::arg(r.u);
  if (m.c == Complex(0)) {
    const Boundary finite{m.b / (m.d - m.a), false};
    if (std::abs(m.a) > std::abs(m.d))
      r.axis = {finite, Boundary::infinity()};
    else
      r.axis = {Boundary::infinity(), finite};
  } else {
    const Complex zp = (m.a - m.d + s) / (2.0 * m.c);
    const Complex zm = (m.a - m.d - s) / (2.0 * m.c);
    // attracting where |cz + d| > 1
    if (std::abs(m.c * zp + m.d) > 1)
      r.axis = {{zm, false}, {zp, false}};
    else
      r.axis = {{zp, false}, {zm, false}};
  }
  return r;
}

Moebius normalizing_map(const Axis& g) {
  if (g.p.infinite && g.q.infinite) throw std::invalid_argument("geodesic endpoints coincide");
  if (g.q.infinite) return {1, -g.p.z, 0, 1};
  if (g.p.infinite) return {0, 1, 1, -g.q.z};
  if (g.p.z == g.q.z) throw std::invalid_argument("geodesic endpoints coincide");
  return Moebius{1, -g.p.z, 1, -g.q.z}.normalized();
}

double dist_to_axis(const Point3& z, const Axis& g) {
  const Point3 y = act(normalizing_map(g), z);
  return std::asinh(std::abs(y.w) / y.t);
}

Perpendicular common_perpendicular(const Axis& A, const Axis& B) {
  const Moebius N = normalizing_map(A);
  const Boundary bp = act(N, B.p), bq = act(N, B.q);
  const auto degenerate = [](const Boundary& b) { return b.infinite || std::abs(b.z) < 1e-14; };
  if (degenerate(bp) || degenerate(bq)) throw std::invalid_argument("common_perpendicular: geodesics share an endpoint");
  const Complex lambda = bq.z / bp.z;
  if (std::abs(lambda - 1.0) < 1e-14) throw std::invalid_argument("common_perpendicular: degenerate geodesic");
  Complex mu = std::sqrt(lambda);
  if (std::abs((mu + 1.0) / (mu - 1.0)) < 1) mu = -mu;
  const Complex rm = std::sqrt(mu);
  const Moebius S = Moebius{1, 0, 0, bp.z}.normalized();
  const Moebius R{1.0 / rm, 0, 0, rm};
  const Moebius K = Moebius{1, 1, -1, 1}.normalized();
  const Moebius M = K * R * S * N;
  Perpendicular r;
  r.w = (mu + 1.0) / (mu - 1.0);
  r.length = std::log(std::abs(r.w));
  r.midpoint = act(M.inverse(), Point3{0, std::sqrt(std::abs(r.w))});
  return r;
}

Complex cross_ratio_w(Complex bc) {
  const Complex h = 1.0 + 2.0 * bc;
  const Complex s = std::sqrt(h * h - 1.0);
  const Complex w = h + s;
  return std::abs(w) >= 1 ? w : h - s;
}

bool commute(const Moebius& xi, const Moebius& eta, double tol) {
  const Moebius x = xi.normalized(), e = eta.normalized();
  const Moebius l = x * e, r = e * x;
  return near(l, r, tol) || near(l, negate(r), tol);
}

double jorgensen_number(const Moebius& xi0, const Moebius& eta0) {
  if (commute(xi0, eta0)) throw std::invalid_argument("jorgensen_number: commuting pair");
  const Moebius xi = xi0.normalized(), eta = eta0.normalized();
  const Complex t = xi.trace();
  const Complex k = (xi * eta * xi.inverse() * eta.inverse()).trace();
  return std::abs(t * t - 4.0) + std::abs(k - 2.0);
}

Moebius diagonal_frame(const Moebius& xi, const Moebius& eta) {
  const Moebius N = normalizing_map(loxodromic_data(xi).axis);
  return N * eta.normalized() * N.inverse();
}

double jorgensen_diagonal(const Moebius& xi, const Moebius& eta) {
  if (commute(xi, eta)) throw std::invalid_argument("jorgensen_diagonal: commuting pair");
  const Complex u = loxodromic_data(xi).u;
  const Moebius e = diagonal_frame(xi, eta);
  return std::norm(u - 1.0 / u) * (1 + std::abs(e.b * e.c));
}

Moebius evaluate_word(const Word& w, const Moebius& xi, const Moebius& eta) {
  Moebius m = Moebius::identity();
  for (Letter l : w) {
    if (generator(l) > 2) throw std::invalid_argument("evaluate_word: two-generator word expected");
    const Moebius& g = generator(l) == 1 ? xi : eta;
    m = m * (l > 0 ? g : g.inverse());
  }
  return m;
}

Moebius schottky_generator(Complex p, Complex q, double r, double phase) {
  const Complex c = std::polar(1 / r, phase);
  const Complex d = -c * p, a = c * q;
  return {a, (a * d - 1.0) / c, c, d};
}

SchottkyCertificate isometric_circles(const Moebius& xi0, const Moebius& eta0) {
  SchottkyCertificate cert;
  for (const Moebius& m0 : {xi0, eta0}) {
    const Moebius m = m0.normalized();
    if (m.c == Complex(0)) throw std::invalid_argument("isometric_circles: map fixes infinity");
    const double r = 1 / std::abs(m.c);
    cert.circles.push_back({-m.d / m.c, r});
    cert.circles.push_back({m.a / m.c, r});
  }
  cert.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cert.circles.size(); ++i)
    for (std::size_t j = i + 1; j < cert.circles.size(); ++j)
      cert.min_gap = std::min(cert.min_gap, std::abs(cert.circles[i].center - cert.circles[j].center) -
                                                cert.circles[i].radius - cert.circles[j].radius);
  return cert;
}

bool circles_disjoint(const std::vector<Circle>& circles, double margin) {
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j)
      if (std::abs(circles[i].center - circles[j].center) <= circles[i].radius + circles[j].radius + margin)
        return false;
  return true;
}

SchottkySample schottky_sample(std::uint64_t seed, const SchottkyParams& P) {
  if (!(P.center_min > 0 && P.center_min <= P.center_max && P.radius_min > 0 && P.radius_min <= P.radius_max &&
        P.margin >= 0 && P.jitter >= 0 && P.attempts > 0))
    throw std::invalid_argument("schottky_sample: invalid parameter ranges");
  if (P.center_max * std::numbers::sqrt2 <= 2 * P.radius_min + P.margin)
    throw std::invalid_argument("schottky_sample: parameter ranges cannot separate the circles");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0, 1);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * U(rng); };
  const double pi = std::numbers::pi;
  for (int attempt = 0; attempt < P.attempts; ++attempt) {
    const double phi0 = uniform(0, 2 * pi);
    Complex C[4];
    for (int k = 0; k < 4; ++k)
      C[k] = std::polar(uniform(P.center_min, P.center_max), phi0 + k * pi / 2 + uniform(-P.jitter, P.jitter));
    const double rx = uniform(P.radius_min, P.radius_max), re = uniform(P.radius_min, P.radius_max);
    SchottkySample s;
    s.xi = schottky_generator(C[0], C[2], rx, uniform(0, 2 * pi));
    s.eta = schottky_generator(C[1], C[3], re, uniform(0, 2 * pi));
    s.certificate = isometric_circles(s.xi, s.eta);
    if (circles_disjoint(s.certificate.circles, P.margin)) return s;
  }
  throw std::invalid_argument("schottky_sample: parameter ranges cannot separate the circles");
}

AuditReport audit_pair(const Moebius& xi0, const Moebius& eta0, double alpha) {
  if (!(alpha > 1)) throw std::invalid_argument("audit_pair: alpha must exceed 1");
  if (classify(xi0) != MoebiusClass::Loxodromic || classify(eta0) != MoebiusClass::Loxodromic)
    throw std::invalid_argument("audit_pair: both maps must be loxodromic");
  const Moebius xi = xi0.normalized(), eta = eta0.normalized();
  AuditReport r;
  r.jorgensen = jorgensen_number(xi, eta);
  const Axis A = loxodromic_data(xi).axis;
  const Axis B1{act(eta, A.p), act(eta, A.q)};
  const Axis B2{act(eta.inverse(), A.p), act(eta.inverse(), A.q)};
  r.z1 = common_perpendicular(A, B1).midpoint;
  r.z2 = common_perpendicular(A, B2).midpoint;
  const auto disp = [](const Moebius& g, const Point3& z) { return dist(z, act(g, z)); };
  const Moebius conj1 = eta * xi * eta.inverse();
  r.displacements["xi"] = disp(xi, r.z2);
  r.displacements["eta"] = disp(eta, r.z2);
  r.displacements["xiinv_eta_xi"] = disp(xi.inverse() * eta * xi, r.z2);
  r.displacements["xi_eta_xiinv"] = disp(xi * eta * xi.inverse(), r.z2);
  r.displacements["eta_xi_etainv"] = disp(conj1, r.z2);
  r.displacements["xi_z1"] = disp(xi, r.z1);
  r.displacements["eta_xi_etainv_z1"] = disp(conj1, r.z1);
  r.threshold = 0.5 * std::log(alpha);
  const double q = std::sinh(0.25 * std::log(alpha));
  r.bound = 2 * q * q;
  const auto& D = r.displacements;
  r.hypothesis_holds = D.at("eta") < r.threshold && D.at("xiinv_eta_xi") < r.threshold &&
                       D.at("xi_eta_xiinv") < r.threshold && D.at("eta_xi_etainv") <= D.at("eta_xi_etainv_z1");
  r.gamma_hypothesis_holds = true;
  for (const Word& w : enumerate_gamma_nought(2).entries) {
    const double d = disp(evaluate_word(w, xi, eta), r.z2);
    r.gamma_table[to_string(w)] = d;
    r.gamma_hypothesis_holds = r.gamma_hypothesis_holds && d < r.threshold;
  }
  r.bound_holds = r.jorgensen >= r.bound;
  r.comparison_holds = D.at("xi") < D.at("eta_xi_etainv");
  return r;
}

}  // namespace loxo
