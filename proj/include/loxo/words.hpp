#pragma once

#include <map>
#include <string>
#include <vector>

namespace loxo {

// A letter is a signed generator index: +i stands for x_i, -i for its inverse.
using Letter = int;
using Word = std::vector<Letter>;

inline int generator(Letter l) { return l < 0 ? -l : l; }
inline int sign(Letter l) { return l < 0 ? -1 : 1; }

// Letters of a rank-n alphabet in canonical order x1, x1', x2, x2', ...
std::vector<Letter> alphabet(int n);

Word reduce(const std::vector<Letter>& letters);
Word multiply(const Word& a, const Word& b);
Word invert(const Word& w);
bool is_reduced(const Word& w);
bool is_prefix(const Word& p, const Word& w);

// Number of letter pairs cancelled when forming reduce(a*b) from reduced a, b.
int cancellation(const Word& a, const Word& b);

// Token grammar: "x<i>" and "x<i>'" separated by spaces; "1" or "" is the identity.
std::string to_string(const Word& w);
Word parse_word(const std::string& s);

// All reduced words of length <= max_len, shortlex in alphabet order.
std::vector<Word> reduced_words(int n, int max_len);

// Reduced words extending prefix, with total length <= max_len (prefix included).
std::vector<Word> extensions(const Word& prefix, int n, int max_len);

struct PsiTable {
  int n = 0;
  std::vector<Word> entries;
  std::map<Word, int> index_of;

  int size() const { return static_cast<int>(entries.size()); }
  // 1-based index, 0 if w is not in the table.
  int index(const Word& w) const;
  const Word& at(int idx) const { return entries.at(idx - 1); }
};

struct GammaNought {
  int n = 0;
  std::vector<Word> entries;
};

PsiTable enumerate_psi(int n);
GammaNought enumerate_gamma_nought(int n);

// Index in the table of the unique Psi entry that is a prefix of w, or 0.
int psi_prefix(const PsiTable& table, const Word& w);

}  // namespace loxo
