#include "fgcert/words.hpp"

#include <algorithm>
#include <cstdlib>

namespace fgcert {

namespace {

constexpr int kMaxRank = 26;

void check_rank(int rank) {
  if (rank < 1 || rank > kMaxRank)
    throw IndexOutOfRange("rank must lie in [1, 26], got " +
                          std::to_string(rank));
}

std::vector<int> reduce_letters(int rank, std::span<const int> raw) {
  std::vector<int> out;
  out.reserve(raw.size());
  for (int x : raw) {
    if (x == 0 || std::abs(x) > rank)
      throw IndexOutOfRange("letter " + std::to_string(x) +
                            " out of range for rank " + std::to_string(rank));
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

} // namespace

Word word_from_reduced(int rank, std::vector<int> letters) {
  return Word(rank, std::move(letters), Word::AlreadyReduced{});
}

Word::Word(int rank) : rank_(rank) { check_rank(rank); }

Word::Word(int rank, std::span<const int> raw) : rank_(rank) {
  check_rank(rank);
  letters_ = reduce_letters(rank, raw);
}

Word::Word(int rank, std::initializer_list<int> raw)
    : Word(rank, std::span<const int>(raw.begin(), raw.size())) {}

Word parse_word(int rank, std::string_view text) {
  check_rank(rank);
  if (text.empty())
    throw ParseError("empty word string; use \"1\" for the trivial word");
  if (text == "1")
    return Word(rank);
  std::vector<int> raw;
  raw.reserve(text.size());
  for (char c : text) {
    int letter = 0;
    if (c >= 'a' && c <= 'z')
      letter = c - 'a' + 1;
    else if (c >= 'A' && c <= 'Z')
      letter = -(c - 'A' + 1);
    else
      throw ParseError(std::string("invalid character '") + c + "' in word");
    if (std::abs(letter) > rank)
      throw ParseError(std::string("letter '") + c + "' exceeds rank " +
                       std::to_string(rank));
    raw.push_back(letter);
  }
  return Word(rank, raw);
}

std::string to_text(const Word& w) {
  if (w.trivial())
    return "1";
  std::string out;
  out.reserve(w.size());
  for (int x : w.letters())
    out += x > 0 ? static_cast<char>('a' + x - 1)
                 : static_cast<char>('A' - x - 1);
  return out;
}

Word invert(const Word& w) {
  std::vector<int> letters(w.letters().rbegin(), w.letters().rend());
  for (int& x : letters)
    x = -x;
  return word_from_reduced(w.rank(), std::move(letters));
}

Word concat(const Word& u, const Word& v) {
  if (u.rank() != v.rank())
    throw RankMismatch("concat over different ranks");
  // Only the junction can cancel; both sides are already reduced.
  std::vector<int> letters = u.letters();
  for (int x : v.letters()) {
    if (!letters.empty() && letters.back() == -x)
      letters.pop_back();
    else
      letters.push_back(x);
  }
  return word_from_reduced(u.rank(), std::move(letters));
}

Word power(const Word& w, long long k) {
  if (k < 0)
    return power(invert(w), -k);
  // w = p c p^-1 with c cyclically reduced and p the reduction conjugator,
  // so w^k = p c^k p^-1 without any further cancellation.
  CyclicWord c = cyclic_reduce(w);
  const Word& p = c.conjugator;
  std::vector<int> letters = p.letters();
  letters.reserve(p.size() * 2 + c.letters.size() * static_cast<size_t>(k));
  for (long long i = 0; i < k; ++i)
    letters.insert(letters.end(), c.letters.begin(), c.letters.end());
  for (auto it = p.letters().rbegin(); it != p.letters().rend(); ++it)
    letters.push_back(-*it);
  return Word(w.rank(), letters);
}

Word conjugate(const Word& w, const Word& h) {
  return concat(concat(invert(h), w), h);
}

std::vector<long long> abelianization(const Word& w) {
  std::vector<long long> v(static_cast<size_t>(w.rank()), 0);
  for (int x : w.letters())
    v[static_cast<size_t>(std::abs(x)) - 1] += x > 0 ? 1 : -1;
  return v;
}

CyclicWord cyclic_reduce(const Word& w) {
  const std::vector<int>& ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  std::vector<int> core(ls.begin() + static_cast<long>(lo),
                        ls.begin() + static_cast<long>(hi));
  std::vector<int> prefix(ls.begin(), ls.begin() + static_cast<long>(lo));
  // w = prefix . core . prefix^-1, so conjugating by `prefix` recovers core.
  Word conj(w.rank(), prefix);

  if (core.empty())
    return CyclicWord{w.rank(), {}, conj};

  // Least rotation, letters ordered by signed index.
  std::size_t n = core.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      int lhs = core[(r + i) % n];
      int rhs = core[(best + i) % n];
      if (lhs != rhs) {
        if (lhs < rhs)
          best = r;
        break;
      }
    }
  }
  std::vector<int> rotated;
  rotated.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    rotated.push_back(core[(best + i) % n]);
  // Rotating left by `best` conjugates by the dropped head segment.
  std::vector<int> head(core.begin(), core.begin() + static_cast<long>(best));
  Word full_conj = concat(conj, Word(w.rank(), head));
  return CyclicWord{w.rank(), std::move(rotated), std::move(full_conj)};
}

bool oracle_conjugate(const Word& u, const Word& v) {
  if (u.rank() != v.rank())
    throw RankMismatch("oracle_conjugate over different ranks");
  return cyclic_reduce(u).letters == cyclic_reduce(v).letters;
}

PrimitiveRoot primitive_root(const Word& w) {
  if (w.trivial())
    throw TrivialWord("primitive_root of the trivial word");
  CyclicWord c = cyclic_reduce(w);
  std::size_t n = c.letters.size();
  std::size_t period = n;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0)
      continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i)
      ok = c.letters[i] == c.letters[i % p];
    if (ok) {
      period = p;
      break;
    }
  }
  std::vector<int> seg(c.letters.begin(),
                       c.letters.begin() + static_cast<long>(period));
  Word root = conjugate(Word(w.rank(), seg), invert(c.conjugator));
  return PrimitiveRoot{std::move(root), static_cast<int>(n / period)};
}

std::optional<std::pair<std::size_t, std::size_t>>
find_dependent_pair(std::span<const Word> ws) {
  std::vector<Word> roots;
  roots.reserve(ws.size());
  for (const Word& w : ws) {
    if (w.trivial())
      throw TrivialWord("independence is undefined for the trivial word");
    if (w.rank() != ws.front().rank())
      throw RankMismatch("independence over different ranks");
    roots.push_back(primitive_root(w).root);
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (oracle_conjugate(roots[i], roots[j]) ||
          oracle_conjugate(roots[i], invert(roots[j])))
        return std::make_pair(i, j);
  return std::nullopt;
}

bool are_independent(std::span<const Word> ws) {
  return !find_dependent_pair(ws).has_value();
}

} // namespace fgcert
