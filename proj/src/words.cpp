#include "loxo/words.hpp"

#include <sstream>
#include <stdexcept>

namespace loxo {

namespace {

void check_rank(int n) {
  if (n < 2) throw std::invalid_argument("rank must be at least 2");
}

// Listing order of the 28 two-generator words, x1 = xi and x2 = eta.
const std::vector<Word>& psi_rank2() {
  static const std::vector<Word> order = {
      {1, -2, -1}, {1, -2, 1},   {1, -2, -2},  {1, 2, 2},    {1, 2, -1},   {1, 2, 1},   {1, 1},
      {-2, -1, -2}, {-2, -1, 2}, {-2, -1, -1}, {-2, 1, 1},   {-2, 1, -2},  {-2, 1, 2},  {-2, -2},
      {2, -1, -2},  {2, -1, 2},  {2, -1, -1},  {2, 1, 1},    {2, 1, -2},   {2, 1, 2},   {2, 2},
      {-1, -2, -1}, {-1, -2, 1}, {-1, -2, -2}, {-1, 2, 2},   {-1, 2, -1},  {-1, 2, 1},  {-1, -1}};
  return order;
}

void extend(Word& cur, int n, int max_len, std::vector<Word>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) >= max_len) return;
  for (Letter l : alphabet(n)) {
    if (!cur.empty() && cur.back() == -l) continue;
    cur.push_back(l);
    extend(cur, n, max_len, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Letter> alphabet(int n) {
  std::vector<Letter> a;
  a.reserve(2 * n);
  for (int i = 1; i <= n; ++i) {
    a.push_back(i);
    a.push_back(-i);
  }
  return a;
}

Word reduce(const std::vector<Letter>& letters) {
  Word out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0) throw std::invalid_argument("letter 0 is not a generator");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word multiply(const Word& a, const Word& b) {
  Word cat(a);
  cat.insert(cat.end(), b.begin(), b.end());
  return reduce(cat);
}

Word invert(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = -l;
  return out;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return true;
}

bool is_prefix(const Word& p, const Word& w) {
  if (p.size() > w.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != w[i]) return false;
  return true;
}

int cancellation(const Word& a, const Word& b) {
  int k = 0;
  while (k < static_cast<int>(a.size()) && k < static_cast<int>(b.size()) &&
         a[a.size() - 1 - k] == -b[k])
    ++k;
  return k;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += 'x';
    s += std::to_string(generator(w[i]));
    if (w[i] < 0) s += '\'';
  }
  return s;
}

Word parse_word(const std::string& s) {
  std::istringstream in(s);
  std::string tok;
  Word w;
  while (in >> tok) {
    if (tok == "1") continue;
    if (tok.size() < 2 || tok[0] != 'x') throw std::invalid_argument("bad token: " + tok);
    bool inv = tok.back() == '\'';
    std::string digits = tok.substr(1, tok.size() - 1 - (inv ? 1 : 0));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad token: " + tok);
    int g = std::stoi(digits);
    if (g < 1) throw std::invalid_argument("bad generator: " + tok);
    w.push_back(inv ? -g : g);
  }
  return reduce(w);
}

std::vector<Word> reduced_words(int n, int max_len) {
  std::vector<Word> out;
  Word cur;
  extend(cur, n, max_len, out);
  return out;
}

std::vector<Word> extensions(const Word& prefix, int n, int max_len) {
  std::vector<Word> out;
  if (static_cast<int>(prefix.size()) > max_len) return out;
  Word cur(prefix);
  extend(cur, n, max_len, out);
  return out;
}

int PsiTable::index(const Word& w) const {
  auto it = index_of.find(w);
  return it == index_of.end() ? 0 : it->second;
}

PsiTable enumerate_psi(int n) {
  check_rank(n);
  PsiTable t;
  t.n = n;
  if (n == 2) {
    t.entries = psi_rank2();
  } else {
    const auto letters = alphabet(n);
    for (Letter a : letters) {
      for (Letter b : letters) {
        if (generator(b) == generator(a)) continue;
        for (Letter c : letters) {
          if (c == -b) continue;
          t.entries.push_back({a, b, c});
        }
      }
      t.entries.push_back({a, a});
    }
  }
  for (int i = 0; i < t.size(); ++i) t.index_of[t.entries[i]] = i + 1;
  return t;
}

GammaNought enumerate_gamma_nought(int n) {
  check_rank(n);
  GammaNought g;
  g.n = n;
  const auto letters = alphabet(n);
  for (Letter a : letters) g.entries.push_back({a});
  for (Letter w : letters)
    for (Letter a : letters)
      if (generator(a) != generator(w)) g.entries.push_back({w, a, -w});
  return g;
}

int psi_prefix(const PsiTable& table, const Word& w) {
  if (w.size() < 2) return 0;
  if (w[1] == w[0]) return table.index({w[0], w[0]});
  if (w.size() < 3) return 0;
  return table.index({w[0], w[1], w[2]});
}

}  // namespace loxo
