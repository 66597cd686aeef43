#include "loxo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace loxo {

double poly_eval(const Polynomial& p, double x) {
  double acc = 0;
  for (int i = 0; i < p.coeffs.size(); ++i) acc = acc * x + p.coeffs(i);
  return acc;
}

Polynomial poly_derivative(const Polynomial& p) {
  const int d = p.degree();
  Polynomial q;
  q.coeffs.resize(std::max(d, 1));
  if (d == 0) {
    q.coeffs(0) = 0;
    return q;
  }
  for (int i = 0; i < d; ++i) q.coeffs(i) = p.coeffs(i) * (d - i);
  return q;
}

double cauchy_bound(const Polynomial& p) {
  if (p.coeffs.size() == 0 || p.coeffs(0) == 0) throw std::invalid_argument("leading coefficient is zero");
  return 1 + (p.coeffs.tail(p.coeffs.size() - 1) / p.coeffs(0)).cwiseAbs().maxCoeff();
}

Polynomial pn_coefficients(int n) {
  if (n < 2) throw std::invalid_argument("rank must be at least 2");
  const double m = n;
  const double m2 = m * m, m3 = m2 * m, m4 = m3 * m, m5 = m4 * m, m6 = m5 * m;
  Polynomial p;
  p.coeffs.resize(5);
  p.coeffs << 8 * m3 - 12 * m2 + 2 * m + 1,
      -64 * m6 + 192 * m5 - 192 * m4 + 64 * m3 + 4 * m2 + 2 * m - 4,
      -96 * m5 + 224 * m4 - 168 * m3 + 52 * m2 - 18 * m + 6,
      32 * m5 - 112 * m4 + 128 * m3 - 68 * m2 + 22 * m - 4,
      16 * m4 - 32 * m3 + 24 * m2 - 8 * m + 1;
  return p;
}

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::pair<double, double>> brackets(const Polynomial& p, double lo, double hi, int cells) {
  std::vector<std::pair<double, double>> out;
  const double h = (hi - lo) / cells;
  double a = lo, fa = poly_eval(p, a);
  for (int i = 1; i <= cells; ++i) {
    const double b = i == cells ? hi : lo + i * h;
    const double fb = poly_eval(p, b);
    if (fa == 0) {
      out.emplace_back(a, a);
    } else if ((fa < 0) != (fb < 0) && fb != 0) {
      out.emplace_back(a, b);
    }
    a = b;
    fa = fb;
  }
  if (fa == 0) out.emplace_back(a, a);
  return out;
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p, double lo, double hi, double tol) {
  if (!(lo < hi) || !(tol > 0)) throw std::invalid_argument("real_roots: bad interval or tolerance");
  if (p.coeffs.size() < 2 || p.coeffs(0) == 0) throw std::invalid_argument("real_roots: degenerate polynomial");
  int cells = 64;
  auto br = brackets(p, lo, hi, cells);
  int stable = 0;
  while (stable < 3 || cells < 4096) {
    cells *= 2;
    auto next = brackets(p, lo, hi, cells);
    stable = next.size() == br.size() ? stable + 1 : 0;
    br = std::move(next);
    if (cells > (1 << 22)) break;
  }
  std::vector<double> roots;
  for (auto [a, b] : br)
    roots.push_back(a == b ? a : bisect([&](double x) { return poly_eval(p, x); }, a, b, tol));
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> real_roots(const Polynomial& p, double tol) {
  const double b = cauchy_bound(p);
  return real_roots(p, -b, b, tol);
}

SymmetricPoint class_values(int n, double alpha) {
  const double k = 2 * n - 1;
  const double B = 1.0 / (2 * n);
  SymmetricPoint s;
  s.x1 = k / (k + alpha);
  s.x4 = 1 / (1 + k * alpha);
  const double S = (B - s.x4) / (2 * (n - 1));
  const double sig = S / (1 - S);  // sigma of the complement of a Psi-block
  s.x2 = s.x3 = 1 / (1 + alpha / sig);
  return s;
}

double class_residual(int n, double alpha) {
  const SymmetricPoint s = class_values(n, alpha);
  const double S = (1.0 / (2 * n) - s.x4) / (2 * (n - 1));
  return s.x1 + (n - 1) * (s.x2 + s.x3) - S;
}

SolveResult analytic_solve(int n, double tol) {
  if (n < 2) throw std::invalid_argument("rank must be at least 2");
  SolveResult r;
  r.n = n;
  r.polynomial = pn_coefficients(n);
  const double lo = (2.0 * n - 1) * (2.0 * n - 1) + 1e-9;
  const double hi = cauchy_bound(r.polynomial);
  auto f = [n](double a) { return class_residual(n, a); };
  if (!(f(lo) > 0 && f(hi) < 0)) throw std::runtime_error("analytic_solve: bisection bracket failure");
  r.alpha = bisect(f, lo, hi, tol * 1e-4);
  r.classes = class_values(n, r.alpha);
  r.xstar = lift_symmetric(r.classes, enumerate_psi(n));
  r.residual = std::abs(poly_eval(r.polynomial, r.alpha)) /
               std::abs(poly_eval(poly_derivative(r.polynomial), r.alpha));
  r.half_log = 0.5 * std::log(r.alpha);
  const double q = std::sinh(0.25 * std::log(r.alpha));
  r.jorgensen_bound = 2 * q * q;
  return r;
}

SimplexPoint lift_symmetric(const SymmetricPoint& s, const PsiTable& table) {
  if (!(s.x1 > 0 && s.x2 > 0 && s.x3 > 0 && s.x4 > 0))
    throw std::invalid_argument("lift_symmetric: class values must be positive");
  const double v[4] = {s.x1, s.x2, s.x3, s.x4};
  SimplexPoint x(table.size());
  for (int i = 0; i < table.size(); ++i) x(i) = v[symmetry_class(table.entries[i]) - 1];
  if (std::abs(x.sum() - 1) > 1e-10) throw std::domain_error("lift_symmetric: lifted point does not sum to 1");
  return x;
}

Eigen::VectorXd min_norm_weights(const Eigen::Ref<const Eigen::MatrixXd>& P, double tol) {
  const int k = P.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
  if (k == 0) return w;
  int first;
  P.colwise().squaredNorm().minCoeff(&first);
  std::vector<int> corral{first};
  std::vector<double> lam{1.0};
  Eigen::VectorXd x = P.col(first);
  const double scale = P.colwise().squaredNorm().maxCoeff();

  for (int major = 0; major < 10 * k + 50; ++major) {
    int j;
    (P.transpose() * x).minCoeff(&j);
    if (x.squaredNorm() - x.dot(P.col(j)) <= tol * scale) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    lam.push_back(0.0);
    for (;;) {
      const int c = corral.size();
      Eigen::MatrixXd K(c + 1, c + 1);
      for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b) K(a, b) = P.col(corral[a]).dot(P.col(corral[b]));
      K.row(c).setOnes();
      K.col(c).setOnes();
      K(c, c) = 0;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(c + 1);
      rhs(c) = 1;
      Eigen::VectorXd mu = K.completeOrthogonalDecomposition().solve(rhs);
      if (mu.head(c).minCoeff() > 1e-14) {
        for (int a = 0; a < c; ++a) lam[a] = mu(a);
        break;
      }
      double theta = 1;
      for (int a = 0; a < c; ++a)
        if (mu(a) <= 1e-14) theta = std::min(theta, lam[a] / (lam[a] - mu(a)));
      std::vector<int> keep_c;
      std::vector<double> keep_l;
      for (int a = 0; a < c; ++a) {
        const double l = theta * mu(a) + (1 - theta) * lam[a];
        if (l > 1e-14) {
          keep_c.push_back(corral[a]);
          keep_l.push_back(l);
        }
      }
      if (keep_c.empty()) {
        keep_c.push_back(corral.back());
        keep_l.push_back(1.0);
      }
      corral = keep_c;
      lam = keep_l;
      double sum = 0;
      for (double l : lam) sum += l;
      for (double& l : lam) l /= sum;
    }
    x.setZero();
    for (std::size_t a = 0; a < corral.size(); ++a) x += lam[a] * P.col(corral[a]);
  }
  for (std::size_t a = 0; a < corral.size(); ++a) w(corral[a]) = lam[a];
  return w;
}

namespace {

// Evaluation through complements keeps the numerator sums cheap and accurate.
struct Family {
  int m = 0;
  std::vector<int> denom;
  std::vector<std::vector<int>> comp;  // zero-based complement of each numerator

  explicit Family(const std::vector<FunctionSpec>& specs, int dim = 0) : m(dim) {
    for (const FunctionSpec& f : specs) {
      denom.push_back(f.denom - 1);
      m = std::max({m, f.denom, f.numer.empty() ? 0 : f.numer.back()});
    }
    for (const FunctionSpec& f : specs) {
      std::vector<char> in(m, 0);
      for (int i : f.numer) in[i - 1] = 1;
      std::vector<int> c;
      for (int i = 0; i < m; ++i)
        if (!in[i]) c.push_back(i);
      comp.push_back(std::move(c));
    }
  }

  double numer_sum(int i, const Eigen::VectorXd& x) const {
    double s = 0;
    for (int j : comp[i]) s += x(j);
    return 1 - s;
  }

  void log_values(const Eigen::VectorXd& x, Eigen::VectorXd& lv) const {
    lv.resize(denom.size());
    for (int i = 0; i < lv.size(); ++i) {
      const double s = numer_sum(i, x), xk = x(denom[i]);
      lv(i) = std::log((1 - s) / s) + std::log((1 - xk) / xk);
    }
  }

  Eigen::VectorXd log_grad(int i, const Eigen::VectorXd& x) const {
    const double s = numer_sum(i, x), xk = x(denom[i]);
    const double a = -1 / (s * (1 - s));
    Eigen::VectorXd g = Eigen::VectorXd::Constant(m, a);
    for (int j : comp[i]) g(j) = 0;
    g(denom[i]) += -1 / (xk * (1 - xk));
    return g;
  }
};

}  // namespace

namespace {

// Away-step Frank-Wolfe for the min-norm point of conv(H), warm-started from lam.
void min_norm_fw(const Eigen::MatrixXd& H, Eigen::VectorXd& lam, int max_iter, double tol) {
  const int k = H.cols();
  if (lam.size() != k || !(lam.sum() > 0)) lam = Eigen::VectorXd::Constant(k, 1.0 / k);
  lam /= lam.sum();
  Eigen::VectorXd y = H * lam;
  const double scale = H.colwise().squaredNorm().maxCoeff();
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd g = H.transpose() * y;
    const double yy = y.squaredNorm();
    int j;
    g.minCoeff(&j);
    int a = -1;
    for (int i = 0; i < k; ++i)
      if (lam(i) > 0 && (a < 0 || g(i) > g(a))) a = i;
    const double fw_gap = yy - g(j), away_gap = g(a) - yy;
    if (fw_gap <= tol * scale) break;
    if (fw_gap >= away_gap) {
      const Eigen::VectorXd dir = H.col(j) - y;
      const double dd = dir.squaredNorm();
      if (dd <= 0) break;
      const double gamma = std::clamp(-y.dot(dir) / dd, 0.0, 1.0);
      lam *= 1 - gamma;
      lam(j) += gamma;
      y += gamma * dir;
    } else {
      const Eigen::VectorXd dir = y - H.col(a);
      const double dd = dir.squaredNorm();
      if (dd <= 0) break;
      const double gmax = lam(a) < 1 ? lam(a) / (1 - lam(a)) : 1e300;
      const double gamma = std::clamp(-y.dot(dir) / dd, 0.0, gmax);
      lam *= 1 + gamma;
      lam(a) -= gamma;
      if (gamma == gmax) lam(a) = 0;
      y += gamma * dir;
    }
  }
}

// Gauss-Newton on the equalized active set: log f_i(x) = t, sum x = 1.
bool polish(const Family& fam, Eigen::VectorXd& x, double band) {
  Eigen::VectorXd lv;
  fam.log_values(x, lv);
  const double lmax = lv.maxCoeff();
  std::vector<int> act;
  for (int i = 0; i < lv.size(); ++i)
    if (lv(i) >= lmax - band) act.push_back(i);
  const int m = fam.m, k = act.size();
  Eigen::VectorXd z(m + 1);
  z << x, lmax;
  const auto residual = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd r(k + 1);
    const Eigen::VectorXd xv = v.head(m);
    for (int a = 0; a < k; ++a) {
      const double s = fam.numer_sum(act[a], xv), xk = xv(fam.denom[act[a]]);
      r(a) = std::log((1 - s) / s) + std::log((1 - xk) / xk) - v(m);
    }
    r(k) = xv.sum() - 1;
    return r;
  };
  Eigen::VectorXd r = residual(z);
  for (int it = 0; it < 100 && r.norm() > 1e-14; ++it) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k + 1, m + 1);
    for (int a = 0; a < k; ++a) {
      J.block(a, 0, 1, m) = fam.log_grad(act[a], z.head(m)).transpose();
      J(a, m) = -1;
    }
    J.block(k, 0, 1, m).setOnes();
    const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-r);
    double tau = 1;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls, tau *= 0.5) {
      const Eigen::VectorXd cand = z + tau * step;
      if (cand.head(m).minCoeff() <= 0) continue;
      bool inside = true;
      for (int a = 0; a < k && inside; ++a) {
        const double s = fam.numer_sum(act[a], cand.head(m));
        inside = s > 0 && s < 1;
      }
      if (!inside) continue;
      const Eigen::VectorXd rc = residual(cand);
      if (rc.norm() < r.norm()) {
        z = cand;
        r = rc;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (r.norm() > 1e-10) return false;
  x = z.head(m);
  return true;
}

}  // namespace

MinmaxResult minmax_run(const std::vector<FunctionSpec>& specs, const SimplexPoint& start, const MinmaxOptions& opt) {
  if (specs.empty()) throw std::invalid_argument("minmax: no specs");
  const Family fam(specs, static_cast<int>(start.size()));
  if (start.size() != fam.m) throw std::invalid_argument("minmax: dimension mismatch");
  Eigen::VectorXd x = start / start.sum();
  Eigen::VectorXd lv, weights = Eigen::VectorXd::Zero(specs.size());
  MinmaxResult res;
  double best = std::numeric_limits<double>::infinity();
  int since = 0;
  for (int t = 1; t <= opt.iters; ++t) {
    fam.log_values(x, lv);
    const double lmax = lv.maxCoeff();
    if (lmax < best) {
      best = lmax;
      res.x = x;
      res.iterations = t;
      since = 0;
    } else if (++since > opt.patience) {
      break;
    }
    const double eps = opt.eps0 / t;
    std::vector<int> act;
    for (int i = 0; i < lv.size(); ++i)
      if (lv(i) >= lmax - eps) act.push_back(i);
    Eigen::MatrixXd G(fam.m, act.size());
    Eigen::VectorXd lam(act.size());
    for (std::size_t a = 0; a < act.size(); ++a) {
      const Eigen::VectorXd g = fam.log_grad(act[a], x);
      G.col(a) = g.array() - x.dot(g);
      lam(a) = weights(act[a]);
    }
    const Eigen::MatrixXd H = x.cwiseSqrt().asDiagonal() * G;
    min_norm_fw(H, lam, opt.inner_iters, opt.inner_tol);
    weights.setZero();
    for (std::size_t a = 0; a < act.size(); ++a) weights(act[a]) = lam(a);
    const Eigen::VectorXd d = G * lam;
    if (x.cwiseSqrt().cwiseProduct(d).norm() < opt.stationarity && lmax <= best) res.converged = true;
    const double eta = opt.step / std::sqrt(static_cast<double>(t));
    x = (x.array() * (-eta * x.maxCoeff() * d.array()).exp()).cwiseMax(opt.clamp);
    x /= x.sum();
  }
  res.descent_value = std::exp(best);
  if (opt.polish) {
    Eigen::VectorXd y = res.x;
    if (polish(fam, y, opt.polish_band)) {
      fam.log_values(y, lv);
      if (lv.maxCoeff() < best) {
        best = lv.maxCoeff();
        res.x = y;
        res.polished = true;
        res.converged = true;
      }
    }
  }
  res.value = std::exp(best);
  return res;
}

MinmaxResult minmax_numeric(const std::vector<FunctionSpec>& specs, std::uint64_t seed, const MinmaxOptions& opt) {
  const Family fam(specs);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  MinmaxResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opt.starts; ++s) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Constant(fam.m, 1.0 / fam.m);
    if (s > 0)
      for (int i = 0; i < fam.m; ++i) x0(i) *= std::exp(u(rng));
    x0 /= x0.sum();
    MinmaxResult r = minmax_run(specs, x0, opt);
    if (r.value < best.value) {
      best = r;
      best.best_start = s;
    }
  }
  return best;
}

LpResult simplex_max(const Eigen::Ref<const Eigen::MatrixXd>& A, const Eigen::Ref<const Eigen::VectorXd>& b,
                     const Eigen::Ref<const Eigen::VectorXd>& c) {
  const int rows = A.rows(), cols = A.cols();
  if (b.minCoeff() < 0) throw std::invalid_argument("simplex_max: b must be nonnegative");
  // Tableau [A I b; -c 0 0] with slack basis.
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(rows + 1, cols + rows + 1);
  T.topLeftCorner(rows, cols) = A;
  T.block(0, cols, rows, rows).setIdentity();
  T.topRightCorner(rows, 1) = b;
  T.bottomLeftCorner(1, cols) = -c.transpose();
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = cols + i;
  const double tol = 1e-12;
  LpResult res;
  for (int it = 0; it < 100000; ++it) {
    int enter = -1;
    for (int j = 0; j < cols + rows; ++j)
      if (T(rows, j) < -tol) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
      if (T(i, enter) > tol) {
        const double r = T(i, cols + rows) / T(i, enter);
        if (r < ratio - 1e-15 || (std::abs(r - ratio) <= 1e-15 && leave >= 0 && basis[i] < basis[leave])) {
          ratio = r;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      res.bounded = false;
      return res;
    }
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= rows; ++i)
      if (i != leave && T(i, enter) != 0) T.row(i) -= T(i, enter) * T.row(leave);
    basis[leave] = enter;
  }
  res.z = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < rows; ++i)
    if (basis[i] < cols) res.z(basis[i]) = T(i, cols + rows);
  res.optimum = T(rows, cols + rows);
  return res;
}

DescentResult descent_lp(const std::vector<FunctionSpec>& specs, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const MaxValue mv = max_value(specs, x);
  const int m = x.size(), k = mv.active.size();
  // z = (v+, v-, t+, t-); maximize t- - t+.
  const int cols = 2 * m + 2, rows = k + 2 + 2 * m;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows), c = Eigen::VectorXd::Zero(cols);
  for (int a = 0; a < k; ++a) {
    Eigen::VectorXd g = gradient(specs[mv.active[a]], x);
    g /= g.norm();
    A.block(a, 0, 1, m) = g.transpose();
    A.block(a, m, 1, m) = -g.transpose();
    A(a, 2 * m) = -1;
    A(a, 2 * m + 1) = 1;
  }
  A.block(k, 0, 1, m).setOnes();
  A.block(k, m, 1, m).setConstant(-1);
  A.block(k + 1, 0, 1, m).setConstant(-1);
  A.block(k + 1, m, 1, m).setOnes();
  A.block(k + 2, 0, 2 * m, 2 * m).setIdentity();
  b.tail(2 * m).setOnes();
  c(2 * m) = -1;
  c(2 * m + 1) = 1;
  const LpResult lp = simplex_max(A, b, c);
  if (!lp.bounded) throw std::logic_error("descent_lp: unbounded linear program");
  DescentResult r;
  r.t = -lp.optimum;
  r.v = lp.z.head(m) - lp.z.segment(m, m);
  r.active = mv.active;
  return r;
}

bool criticality_check(const std::vector<FunctionSpec>& specs, const Eigen::Ref<const Eigen::VectorXd>& x,
                       double eps) {
  return descent_lp(specs, x).t >= -eps;
}

bool convexity_certificate(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != 28) throw std::invalid_argument("convexity_certificate: two-generator point expected");
  for (int l : {1, 5, 9, 13, 15, 19, 23, 27}) {
    const int block = (l - 1) / 7;
    const double sum = x.segment(7 * block, 7).sum() - x(l - 1);
    if (!in_region(sum, x(l - 1))) return false;
  }
  return true;
}

}  // namespace loxo
