#pragma once

#include <optional>
#include <vector>

#include "loxo/words.hpp"

namespace loxo {

enum class PrefixClass { AllIn, AllOut, Mixed };

// gamma * J_s = Gamma - (residue u union of J_phi for phi in S).
struct Relation {
  Word gamma;
  Word s;
  int s_index = 0;
  std::vector<int> S;  // sorted Psi indices
  std::vector<Word> residue;
  int cancellation = 0;
};

// w lies in gamma * J_psi.
bool membership(const Word& gamma, const Word& psi, const Word& w);

PrefixClass classify_prefix(const Word& gamma, const Word& psi, const Word& phi, int n);

std::optional<Relation> derive_relation(const Word& gamma, const Word& psi, const PsiTable& table);

// All relations with gamma in gammas and s in the table, ordered by (gamma, s) position.
std::vector<Relation> enumerate_relations(const PsiTable& table, const std::vector<Word>& gammas);
std::vector<Relation> enumerate_relations(int n);

// Relations for every reduced gamma of length 1..max_len.
std::vector<Relation> enumerate_relations_all_gamma(int n, int max_len);

bool validate_relation(const Relation& rel, const PsiTable& table, int depth);

}  // namespace loxo
