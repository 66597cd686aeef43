#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "loxo/functions.hpp"
#include "loxo/words.hpp"

namespace loxo {

// Coefficients in descending degree order.
struct Polynomial {
  Eigen::VectorXd coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

double poly_eval(const Polynomial& p, double x);
Polynomial poly_derivative(const Polynomial& p);
double cauchy_bound(const Polynomial& p);

Polynomial pn_coefficients(int n);

std::vector<double> real_roots(const Polynomial& p, double lo, double hi, double tol);
std::vector<double> real_roots(const Polynomial& p, double tol);

// Class values: conjugate-type, aba-type, abb-type, square.
struct SymmetricPoint {
  double x1 = 0, x2 = 0, x3 = 0, x4 = 0;
};

struct SolveResult {
  int n = 0;
  double alpha = 0;
  SymmetricPoint classes;
  SimplexPoint xstar;
  Polynomial polynomial;
  double residual = 0;  // |p(alpha)| / |p'(alpha)|
  double half_log = 0;
  double jorgensen_bound = 0;
};

// Class values as functions of alpha and the scalar residual whose root is alpha_n.
SymmetricPoint class_values(int n, double alpha);
double class_residual(int n, double alpha);

SolveResult analytic_solve(int n, double tol = 1e-12);

SimplexPoint lift_symmetric(const SymmetricPoint& s, const PsiTable& table);

struct MinmaxOptions {
  int iters = 200000;
  double step = 0.5;
  double clamp = 1e-12;
  double eps0 = 0.1;        // active-set width eps0 / t on log values
  int starts = 10;
  double stationarity = 1e-9;
  int patience = 20000;     // stop a run after this many iterations without improvement
  int inner_iters = 500;    // Frank-Wolfe iterations for the min-norm direction
  double inner_tol = 1e-10;
  bool polish = true;       // Gauss-Newton on the equalized active set after descent
  double polish_band = 1.0; // log-value band defining that active set
};

struct MinmaxResult {
  double value = 0;
  SimplexPoint x;
  double descent_value = 0; // best value reached by mirror descent alone
  int iterations = 0;       // iterations used by the best run
  bool converged = false;   // internal stationarity tolerance met
  bool polished = false;
  int best_start = 0;
};

MinmaxResult minmax_numeric(const std::vector<FunctionSpec>& specs, std::uint64_t seed,
                            const MinmaxOptions& opt = {});
MinmaxResult minmax_run(const std::vector<FunctionSpec>& specs, const SimplexPoint& start,
                        const MinmaxOptions& opt = {});

// Minimum-norm point of the convex hull of the columns of P; returns the weights.
Eigen::VectorXd min_norm_weights(const Eigen::Ref<const Eigen::MatrixXd>& P, double tol = 1e-12);

struct LpResult {
  double optimum = 0;
  Eigen::VectorXd z;
  bool bounded = true;
};

// maximize c.z subject to A z <= b, z >= 0, with b >= 0.
LpResult simplex_max(const Eigen::Ref<const Eigen::MatrixXd>& A, const Eigen::Ref<const Eigen::VectorXd>& b,
                     const Eigen::Ref<const Eigen::VectorXd>& c);

struct DescentResult {
  double t = 0;          // optimal value of max_i grad_i . v
  Eigen::VectorXd v;
  std::vector<int> active;
};

DescentResult descent_lp(const std::vector<FunctionSpec>& specs, const Eigen::Ref<const Eigen::VectorXd>& x);
bool criticality_check(const std::vector<FunctionSpec>& specs, const Eigen::Ref<const Eigen::VectorXd>& x,
                       double eps);

// Membership of a two-generator point in every region C_{f_l} for conjugate-type l.
bool convexity_certificate(const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace loxo
