#ifndef FGCERT_WORDS_HPP
#define FGCERT_WORDS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fgcert/errors.hpp"

namespace fgcert {

/// A freely reduced word in a free group of finite rank.
///
/// Letters are signed generator indices: +i is the i-th generator, -i its
/// inverse (1-based, i <= rank). The letter sequence is kept freely reduced
/// at all times. Values are immutable after construction and all operations
/// are pure, so Words can be shared freely across threads.
///
/// Conjugation follows the convention g^h = h^-1 g h throughout.
class Word {
public:
  /// The trivial word of rank 1.
  Word() : rank_(1) {}

  /// The empty word in rank `rank`.
  explicit Word(int rank);

  /// Freely reduces `raw` and checks that every |letter| lies in [1, rank].
  Word(int rank, std::span<const int> raw);
  Word(int rank, std::initializer_list<int> raw);

  int rank() const { return rank_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool trivial() const { return letters_.empty(); }

  bool operator==(const Word& other) const = default;

private:
  int rank_;
  std::vector<int> letters_;

  struct AlreadyReduced {};
  Word(int rank, std::vector<int> letters, AlreadyReduced)
      : rank_(rank), letters_(std::move(letters)) {}

  friend Word invert(const Word&);
  friend Word concat(const Word&, const Word&);
  friend Word word_from_reduced(int, std::vector<int>);
};

/// Parses the text syntax: 'a'..'z' are generators 1..26, 'A'..'Z' their
/// inverses, and the string "1" is the empty word.
Word parse_word(int rank, std::string_view text);
std::string to_text(const Word& w);

Word invert(const Word& w);
Word concat(const Word& u, const Word& v);
Word power(const Word& w, long long k);
/// h^-1 w h.
Word conjugate(const Word& w, const Word& h);

/// Exponent-sum vector of `w` (one entry per generator).
std::vector<long long> abelianization(const Word& w);

/// A cyclically reduced conjugacy-class representative.
///
/// `letters` is cyclically reduced and rotated to the lexicographically
/// least rotation (letters compared by signed index), so equal letter
/// sequences characterise conjugate words. `conjugator` witnesses the
/// reduction: conjugate(original, conjugator) has exactly `letters`.
struct CyclicWord {
  int rank;
  std::vector<int> letters;
  Word conjugator;

  Word word() const { return Word(rank, letters); }
};

CyclicWord cyclic_reduce(const Word& w);

/// True iff u and v are conjugate, decided by comparing canonical cyclic
/// forms. Serves as the independent conjugacy oracle for the certificate
/// pipelines.
bool oracle_conjugate(const Word& u, const Word& v);

struct PrimitiveRoot {
  Word root;
  int exponent;
};

/// Maximal-root decomposition w = root^exponent. The centralizer of w is
/// the cyclic group generated by `root`.
PrimitiveRoot primitive_root(const Word& w);

/// Returns the first pair (i, j), i < j, such that some conjugate of ws[i]
/// commutes with ws[j]; nullopt when the set is independent. In a free
/// group this happens exactly when the primitive roots of ws[i] and ws[j]
/// are conjugate up to inverse.
std::optional<std::pair<std::size_t, std::size_t>>
find_dependent_pair(std::span<const Word> ws);

bool are_independent(std::span<const Word> ws);

} // namespace fgcert

#endif
