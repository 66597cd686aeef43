#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "loxo/words.hpp"

namespace loxo {

template <typename Scalar>
struct MoebiusMap {
  using Complex = std::complex<Scalar>;
  Complex a{1}, b{0}, c{0}, d{1};

  static MoebiusMap identity() { return {}; }
  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }

  // Scales to unit determinant.
  MoebiusMap normalized() const {
    const Complex s = std::sqrt(det());
    if (std::abs(s) == Scalar(0)) throw std::invalid_argument("Moebius map is singular");
    return {a / s, b / s, c / s, d / s};
  }
  MoebiusMap inverse() const { return {d, -b, -c, a}; }
};

template <typename Scalar>
MoebiusMap<Scalar> operator*(const MoebiusMap<Scalar>& m, const MoebiusMap<Scalar>& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

template <typename Scalar>
struct H3Point {
  std::complex<Scalar> w;
  Scalar t{1};
};

// A point of the Riemann sphere with an explicit infinity.
template <typename Scalar>
struct BoundaryPoint {
  std::complex<Scalar> z;
  bool infinite = false;

  static BoundaryPoint infinity() { return {std::complex<Scalar>(0), true}; }
};

template <typename Scalar>
struct Geodesic {
  BoundaryPoint<Scalar> p, q;
};

template <typename Scalar>
H3Point<Scalar> act(const MoebiusMap<Scalar>& m, const H3Point<Scalar>& z) {
  const std::complex<Scalar> cwd = m.c * z.w + m.d;
  const Scalar D = std::norm(cwd) + std::norm(m.c) * z.t * z.t;
  return {((m.a * z.w + m.b) * std::conj(cwd) + m.a * std::conj(m.c) * z.t * z.t) / D, z.t / D};
}

template <typename Scalar>
BoundaryPoint<Scalar> act(const MoebiusMap<Scalar>& m, const BoundaryPoint<Scalar>& z) {
  if (z.infinite) {
    if (m.c == std::complex<Scalar>(0)) return BoundaryPoint<Scalar>::infinity();
    return {m.a / m.c, false};
  }
  const std::complex<Scalar> den = m.c * z.z + m.d;
  if (den == std::complex<Scalar>(0)) return BoundaryPoint<Scalar>::infinity();
  return {(m.a * z.z + m.b) / den, false};
}

template <typename Scalar>
Scalar dist(const H3Point<Scalar>& z1, const H3Point<Scalar>& z2) {
  const Scalar dt = z1.t - z2.t;
  const Scalar q = (std::norm(z1.w - z2.w) + dt * dt) / (2 * z1.t * z2.t);
  // acosh(1 + q) written to stay accurate for small q
  return std::log1p(q + std::sqrt(q * (q + 2)));
}

using Moebius = MoebiusMap<double>;
using Point3 = H3Point<double>;
using Boundary = BoundaryPoint<double>;
using Axis = Geodesic<double>;

enum class MoebiusClass { Loxodromic, Elliptic, Parabolic, Identity };

MoebiusClass classify(const Moebius& m, double tol = 1e-12);
std::string to_string(MoebiusClass c);

struct LoxodromicData {
  std::complex<double> u;
  double T = 0;
  double theta = 0;
  Axis axis;  // p repelling, q attracting
};

LoxodromicData loxodromic_data(const Moebius& m);

// Maps g to the axis (0, infinity), sending g.p to 0.
Moebius normalizing_map(const Axis& g);

double dist_to_axis(const Point3& z, const Axis& g);

struct Perpendicular {
  double length = 0;
  Point3 midpoint;
  std::complex<double> w;  // normalized endpoint with |w| >= 1
};

Perpendicular common_perpendicular(const Axis& A, const Axis& B);

// Root of bc = (1 - w)^2 / (4w) with |w| >= 1.
std::complex<double> cross_ratio_w(std::complex<double> bc);

bool commute(const Moebius& xi, const Moebius& eta, double tol = 1e-12);
double jorgensen_number(const Moebius& xi, const Moebius& eta);

// Conjugates xi to diag(u, 1/u); returns the conjugated eta.
Moebius diagonal_frame(const Moebius& xi, const Moebius& eta);
double jorgensen_diagonal(const Moebius& xi, const Moebius& eta);

Moebius evaluate_word(const Word& w, const Moebius& xi, const Moebius& eta);

struct SchottkyParams {
  double center_min = 2.5;    // distance of circle centers from the origin
  double center_max = 4.0;
  double radius_min = 0.4;
  double radius_max = 1.0;
  double margin = 0.05;       // minimal gap between circles
  double jitter = 0.3;        // angular perturbation of the centers
  int attempts = 1000;
};

struct Circle {
  std::complex<double> center;
  double radius = 0;
};

struct SchottkyCertificate {
  std::vector<Circle> circles;  // I(xi), I(xi^-1), I(eta), I(eta^-1)
  double min_gap = 0;
};

struct SchottkySample {
  Moebius xi, eta;
  SchottkyCertificate certificate;
};

// Generator whose isometric circle has center p and whose inverse has center q, both of radius r.
Moebius schottky_generator(std::complex<double> p, std::complex<double> q, double r, double phase);
SchottkyCertificate isometric_circles(const Moebius& xi, const Moebius& eta);
bool circles_disjoint(const std::vector<Circle>& circles, double margin);
SchottkySample schottky_sample(std::uint64_t seed, const SchottkyParams& params = {});

struct AuditReport {
  Point3 z1, z2;
  std::map<std::string, double> displacements;  // at z2 unless suffixed by _z1
  std::map<std::string, double> gamma_table;    // every Gamma_0 word at z2
  bool hypothesis_holds = false;
  bool gamma_hypothesis_holds = false;          // all of Gamma_0 below the threshold at z2
  bool bound_holds = false;
  bool comparison_holds = false;                     // d_xi z2 < d_{eta xi eta^-1} z2
  double jorgensen = 0;
  double threshold = 0;
  double bound = 0;
};

AuditReport audit_pair(const Moebius& xi, const Moebius& eta, double alpha);

}  // namespace loxo
