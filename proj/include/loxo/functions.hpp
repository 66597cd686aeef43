#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loxo/relations.hpp"
#include "loxo/words.hpp"

namespace loxo {

using SimplexPoint = Eigen::VectorXd;

// f(x) = sigma(sum_{i in numer} x_i) * sigma(x_denom), indices 1-based.
struct FunctionSpec {
  int denom = 0;
  std::vector<int> numer;
  std::string label;
  Relation source;
};

struct MaxValue {
  double value = 0;
  std::vector<int> active;  // positions in the function sequence
};

// Coordinate relabeling x_i -> x_{perm(i)} induced by a signed generator permutation.
struct SymmetryAction {
  std::vector<int> perm;     // perm[i-1] = image of index i
  std::vector<Letter> image;  // image[g-1] = signed image of generator g
};

// Per-denominator outcome of the dominance selection.
struct DominanceEntry {
  int denom = 0;
  std::vector<int> selected;    // positions in the input sequence
  std::vector<int> competitors;
  bool by_inclusion = false;    // selection's numerator contained in every competitor's
};

constexpr double kDomainGuard = 1e-15;

template <typename Scalar>
Scalar sigma(Scalar t) {
  if (!(t > Scalar(0) && t < Scalar(1))) throw std::domain_error("sigma: argument outside (0,1)");
  return Scalar(1) / t - Scalar(1);
}

template <typename Derived>
typename Derived::Scalar numerator_sum(const FunctionSpec& f, const Eigen::MatrixBase<Derived>& x) {
  typename Derived::Scalar s(0);
  for (int i : f.numer) s += x(i - 1);
  return s;
}

template <typename Derived>
typename Derived::Scalar evaluate(const FunctionSpec& f, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar s = numerator_sum(f, x);
  const Scalar xk = x(f.denom - 1);
  if (s <= Scalar(kDomainGuard) || s >= Scalar(1 - kDomainGuard) || xk <= Scalar(kDomainGuard) ||
      xk >= Scalar(1 - kDomainGuard))
    throw std::domain_error("evaluate: point outside the domain of " + f.label);
  return sigma(s) * sigma(xk);
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> gradient(const FunctionSpec& f,
                                                                      const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar s = numerator_sum(f, x);
  const Scalar xk = x(f.denom - 1);
  evaluate(f, x);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> g = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(x.size());
  const Scalar dnum = -sigma(xk) / (s * s);
  for (int i : f.numer) g(i - 1) += dnum;
  g(f.denom - 1) += -sigma(s) / (xk * xk);
  return g;
}

// Gradient of log f, used by the optimizer.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> log_gradient(const FunctionSpec& f,
                                                                          const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar s = numerator_sum(f, x);
  const Scalar xk = x(f.denom - 1);
  evaluate(f, x);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> g = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(x.size());
  const Scalar dnum = Scalar(-1) / (s * (Scalar(1) - s));
  for (int i : f.numer) g(i - 1) += dnum;
  g(f.denom - 1) += Scalar(-1) / (xk * (Scalar(1) - xk));
  return g;
}

std::vector<FunctionSpec> specs_from_relations(const std::vector<Relation>& rels, const PsiTable& table);

// Selects, per denominator, the numerator sets of minimal cardinality.
std::vector<FunctionSpec> dominant_specs(const std::vector<FunctionSpec>& specs);
std::vector<DominanceEntry> dominance_report(const std::vector<FunctionSpec>& specs);

MaxValue max_value(const std::vector<FunctionSpec>& specs, const Eigen::Ref<const Eigen::VectorXd>& x);

// Throws std::domain_error unless x is a strictly positive vector summing to 1.
void check_simplex(const Eigen::Ref<const Eigen::VectorXd>& x, double tol = 1e-12);

std::vector<SymmetryAction> symmetry_permutations(const PsiTable& table);
Word apply_relabel(const SymmetryAction& a, const Word& w);
Eigen::VectorXd apply_action(const SymmetryAction& a, const Eigen::Ref<const Eigen::VectorXd>& x);

// Symmetry class of a Psi word: 1 conjugate-type, 2 aba-type, 3 abb-type, 4 square.
// Words a b c with a third generator go to class 2 when c has the sign of a, else class 3.
int symmetry_class(const Word& w);

// Two-variable model g(x, y) = sigma(x + y) sigma(y) on x, y > 0, x + y < 1.
double g2(double x, double y);
Eigen::Matrix2d g2_hessian(double x, double y);
bool in_region(double x_sum, double y);
double region_value(double x_sum, double y);
std::pair<double, double> convex3_constants(double alpha);

}  // namespace loxo
