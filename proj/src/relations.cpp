#include "loxo/relations.hpp"

#include <algorithm>
#include <functional>

namespace loxo {

namespace {

// Does reduce(ginv * w) start with psi?  ginv and w are reduced.
bool starts_with(const Word& ginv, const Word& w, const Word& psi) {
  const int k = cancellation(ginv, w);
  const std::size_t head = ginv.size() - k;
  if (head + (w.size() - k) < psi.size()) return false;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    Letter l = i < head ? ginv[i] : w[k + i - head];
    if (l != psi[i]) return false;
  }
  return true;
}

// Visits reduced words extending cur up to max_len; stops when visit returns false.
bool walk(Word& cur, int n, int max_len, const std::function<bool(const Word&)>& visit) {
  if (!visit(cur)) return false;
  if (static_cast<int>(cur.size()) >= max_len) return true;
  for (int g = 1; g <= n; ++g) {
    for (Letter l : {g, -g}) {
      if (!cur.empty() && cur.back() == -l) continue;
      cur.push_back(l);
      bool go = walk(cur, n, max_len, visit);
      cur.pop_back();
      if (!go) return false;
    }
  }
  return true;
}

PrefixClass classify_inv(const Word& ginv, const Word& psi, const Word& phi, int n, int lmax) {
  bool in = false, out = false;
  Word cur(phi);
  walk(cur, n, std::max<int>(lmax, phi.size()), [&](const Word& w) {
    (starts_with(ginv, w, psi) ? in : out) = true;
    return !(in && out);
  });
  if (in && out) return PrefixClass::Mixed;
  return in ? PrefixClass::AllIn : PrefixClass::AllOut;
}

}  // namespace

bool membership(const Word& gamma, const Word& psi, const Word& w) {
  return starts_with(invert(gamma), w, psi);
}

PrefixClass classify_prefix(const Word& gamma, const Word& psi, const Word& phi, int n) {
  return classify_inv(invert(gamma), psi, phi, n, gamma.size() + psi.size());
}

std::optional<Relation> derive_relation(const Word& gamma, const Word& psi, const PsiTable& table) {
  const int canc = cancellation(gamma, psi);
  if (canc < 1) return std::nullopt;
  const Word ginv = invert(gamma);
  const int lmax = gamma.size() + psi.size();

  Relation rel;
  rel.gamma = gamma;
  rel.s = psi;
  rel.s_index = table.index(psi);
  rel.cancellation = canc;
  for (int i = 1; i <= table.size(); ++i) {
    switch (classify_inv(ginv, psi, table.at(i), table.n, lmax)) {
      case PrefixClass::Mixed:
        return std::nullopt;
      case PrefixClass::AllOut:
        rel.S.push_back(i);
        break;
      case PrefixClass::AllIn:
        break;
    }
  }
  if (rel.S.empty()) return std::nullopt;
  for (const Word& w : reduced_words(table.n, 2))
    if (psi_prefix(table, w) == 0 && !starts_with(ginv, w, psi)) rel.residue.push_back(w);
  return rel;
}

std::vector<Relation> enumerate_relations(const PsiTable& table, const std::vector<Word>& gammas) {
  std::vector<Relation> out;
  for (const Word& g : gammas)
    for (const Word& psi : table.entries)
      if (auto rel = derive_relation(g, psi, table)) out.push_back(std::move(*rel));
  return out;
}

std::vector<Relation> enumerate_relations(int n) {
  return enumerate_relations(enumerate_psi(n), enumerate_gamma_nought(n).entries);
}

std::vector<Relation> enumerate_relations_all_gamma(int n, int max_len) {
  std::vector<Word> gammas;
  for (Word& w : reduced_words(n, max_len))
    if (!w.empty()) gammas.push_back(std::move(w));
  return enumerate_relations(enumerate_psi(n), gammas);
}

bool validate_relation(const Relation& rel, const PsiTable& table, int depth) {
  const Word ginv = invert(rel.gamma);
  std::vector<char> in_S(table.size() + 1, 0);
  for (int i : rel.S) in_S.at(i) = 1;
  bool ok = true;
  Word cur;
  walk(cur, table.n, depth, [&](const Word& w) {
    const bool member = starts_with(ginv, w, rel.s);
    const int p = psi_prefix(table, w);
    const bool covered = (p != 0 && in_S[p]) ||
                         std::find(rel.residue.begin(), rel.residue.end(), w) != rel.residue.end();
    ok = member != covered;
    return ok;
  });
  return ok;
}

}  // namespace loxo
