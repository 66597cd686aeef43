#include "loxo/functions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace loxo {

namespace {

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> complement(const std::vector<int>& a, int m) {
  std::vector<int> out;
  for (int i = 1; i <= m; ++i)
    if (!std::binary_search(a.begin(), a.end(), i)) out.push_back(i);
  return out;
}

std::map<int, std::vector<int>> by_denominator(const std::vector<FunctionSpec>& specs) {
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(specs.size()); ++i) groups[specs[i].denom].push_back(i);
  return groups;
}

}  // namespace

std::vector<DominanceEntry> dominance_report(const std::vector<FunctionSpec>& specs) {
  std::vector<DominanceEntry> out;
  for (const auto& [denom, members] : by_denominator(specs)) {
    DominanceEntry e;
    e.denom = denom;
    std::size_t best = specs[members.front()].numer.size();
    for (int i : members) best = std::min(best, specs[i].numer.size());
    for (int i : members) (specs[i].numer.size() == best ? e.selected : e.competitors).push_back(i);
    e.by_inclusion = true;
    for (int s : e.selected)
      for (int c : e.competitors)
        if (!subset(specs[s].numer, specs[c].numer)) e.by_inclusion = false;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<FunctionSpec> dominant_specs(const std::vector<FunctionSpec>& specs) {
  std::vector<FunctionSpec> out;
  for (const DominanceEntry& e : dominance_report(specs))
    for (int i : e.selected) out.push_back(specs[i]);
  return out;
}

std::vector<FunctionSpec> specs_from_relations(const std::vector<Relation>& rels, const PsiTable& table) {
  std::vector<FunctionSpec> specs;
  specs.reserve(rels.size());
  for (const Relation& r : rels) {
    FunctionSpec f;
    f.denom = r.s_index;
    f.numer = r.S;
    f.source = r;
    specs.push_back(std::move(f));
  }
  const int m = table.size();
  for (const DominanceEntry& e : dominance_report(specs)) {
    for (std::size_t j = 0; j < e.selected.size(); ++j) {
      std::string tag = "f" + std::to_string(e.denom);
      if (j) tag += std::string(1, static_cast<char>('a' + j));
      specs[e.selected[j]].label = tag;
    }
    if (table.n == 2) {
      std::vector<int> conj;
      for (int i : e.competitors) {
        if (specs[i].source.gamma.size() == 1)
          specs[i].label = "g" + std::to_string(e.denom);
        else
          conj.push_back(i);
      }
      std::sort(conj.begin(), conj.end(), [&](int a, int b) {
        return complement(specs[a].numer, m) < complement(specs[b].numer, m);
      });
      for (std::size_t j = 0; j < conj.size(); ++j)
        specs[conj[j]].label = (j == 0 ? "h" : "u") + std::to_string(e.denom);
    } else {
      for (int i : e.competitors)
        specs[i].label = "c" + std::to_string(specs[i].source.cancellation) + "_" + std::to_string(e.denom);
    }
  }
  return specs;
}

MaxValue max_value(const std::vector<FunctionSpec>& specs, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::VectorXd v(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) v(i) = evaluate(specs[i], x);
  MaxValue out;
  out.value = v.maxCoeff();
  const double tol = 1e-9 * (1 + std::abs(out.value));
  for (int i = 0; i < v.size(); ++i)
    if (v(i) >= out.value - tol) out.active.push_back(i);
  return out;
}

void check_simplex(const Eigen::Ref<const Eigen::VectorXd>& x, double tol) {
  if (x.size() == 0 || x.minCoeff() <= 0 || x.maxCoeff() >= 1 || std::abs(x.sum() - 1) > tol)
    throw std::domain_error("point is not in the open simplex");
}

Word apply_relabel(const SymmetryAction& a, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(sign(l) * a.image.at(generator(l) - 1));
  return out;
}

std::vector<SymmetryAction> symmetry_permutations(const PsiTable& table) {
  const int n = table.n;
  std::vector<std::vector<Letter>> images;
  auto identity = [n] {
    std::vector<Letter> id(n);
    for (int g = 1; g <= n; ++g) id[g - 1] = g;
    return id;
  };
  if (n == 2) {
    images = {{1, -2}, {-1, 2}, {-2, -1}};
  } else {
    for (int g = 1; g <= n; ++g) {
      auto im = identity();
      im[g - 1] = -g;
      images.push_back(im);
    }
    for (int g = 1; g < n; ++g) {
      auto im = identity();
      std::swap(im[g - 1], im[g]);
      images.push_back(im);
    }
  }
  std::vector<SymmetryAction> out;
  for (auto& im : images) {
    SymmetryAction a;
    a.image = im;
    for (const Word& w : table.entries) {
      int j = table.index(apply_relabel(a, w));
      if (j == 0) throw std::logic_error("relabeling does not preserve the Psi table");
      a.perm.push_back(j);
    }
    out.push_back(std::move(a));
  }
  return out;
}

Eigen::VectorXd apply_action(const SymmetryAction& a, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::VectorXd y(x.size());
  for (int i = 0; i < x.size(); ++i) y(i) = x(a.perm[i] - 1);
  return y;
}

int symmetry_class(const Word& w) {
  if (w.size() == 2) return 4;
  if (w.size() != 3) throw std::invalid_argument("not a Psi word");
  if (w[2] == -w[0]) return 1;
  if (w[2] == w[0]) return 2;
  if (w[2] == w[1]) return 3;
  return sign(w[2]) == sign(w[0]) ? 2 : 3;
}

double g2(double x, double y) { return sigma(x + y) * sigma(y); }

Eigen::Matrix2d g2_hessian(double x, double y) {
  const double s = x + y;
  const double ss = sigma(s), sy = sigma(y);
  const double ds = -1 / (s * s), dy = -1 / (y * y);
  const double dds = 2 / (s * s * s), ddy = 2 / (y * y * y);
  Eigen::Matrix2d h;
  h(0, 0) = dds * sy;
  h(0, 1) = h(1, 0) = dds * sy + ds * dy;
  h(1, 1) = dds * sy + 2 * ds * dy + ss * ddy;
  return h;
}

double region_value(double x_sum, double y) { return x_sum + 2 * y - x_sum * y - y * y; }

bool in_region(double x_sum, double y) { return region_value(x_sum, y) < 0.75; }

std::pair<double, double> convex3_constants(double alpha) {
  const double disc = 1 - 10 * alpha + 9 * alpha * alpha;
  if (disc < 0) throw std::domain_error("convex3_constants: negative discriminant");
  const double lo = (1 + 3 * alpha - std::sqrt(disc)) / (8 * alpha);
  const double hi = 1 / (1 - alpha) + std::sqrt(alpha / ((alpha - 1) * (alpha - 1)));
  return {lo, hi};
}

}  // namespace loxo
