#ifndef FGCERT_WREATH_HPP
#define FGCERT_WREATH_HPP

#include <vector>

#include "fgcert/homology.hpp"

namespace fgcert {

/// An element of the wreath product (Z/N) wr Q acting on a finite vertex
/// set: `base` holds one residue per vertex and `top` is the vertex
/// permutation of the acting group element. Multiplication twists the base
/// by the inverse of the left factor's top:
///   (b1, t1)(b2, t2) = (b1 + b2 o t1^-1, t1 o t2).
///
/// For the quotients built from normal covers the top stores the element's
/// left-translation permutation of the coset set, which makes this formula
/// the group law without further context.
struct WreathElement {
  long long modulus;
  std::vector<long long> base;
  Permutation top;

  bool base_only() const;
  bool identity() const;
  bool operator==(const WreathElement& other) const = default;
};

WreathElement wreath_identity(long long modulus, int size);
WreathElement wreath_multiply(const WreathElement& x, const WreathElement& y);
WreathElement wreath_inverse(const WreathElement& x);
WreathElement wreath_power(const WreathElement& x, long long k);

/// Exact order: (order of top) * (additive order of the base of that
/// power).
long long wreath_order(const WreathElement& x);

/// Conjugacy of two base elements: true iff some translation carries the
/// first base to the second. When `translations` is the acting copy of Q
/// (left translations for a regular quotient, or the top subgroup of a
/// permutational wreath product), this is exactly conjugacy in the full
/// wreath product because the base is abelian.
bool base_conjugate_test(const WreathElement& x, const WreathElement& y,
                         const std::vector<Permutation>& translations);

/// n * lcm(N, d) / d with the convention lcm(N, 0)/0 = 1: the order of the
/// image of a word of degree n under the extension of a retraction with
/// value gcd d, modulus N.
long long predicted_order(long long n, long long N, long long d);

/// A finite quotient of the free group presented by a normal cover: the
/// vertex set carries the quotient group, with spanning-tree words as coset
/// representatives.
class FiniteQuotient {
public:
  explicit FiniteQuotient(CoverGraph cover); // throws NotNormal

  const CoverGraph& cover() const { return cover_; }
  const std::vector<Word>& reps() const { return reps_; }
  int size() const { return cover_.degree(); }

  /// Left-translation permutation of the class of g: vertex of rep_v maps
  /// to the vertex of g . rep_v.
  Permutation left_translation(const Word& g) const;

  /// All left translations, indexed by the translating vertex.
  std::vector<Permutation> left_translations() const;

private:
  CoverGraph cover_;
  std::vector<Word> reps_;
};

/// Extension of a homology retraction to the whole free group, landing in
/// (Z/N) wr Q. On the cover's subgroup the map reads off the functional
/// against the homology class; the extension evaluates it on
/// rep_q^-1 . g . rep_q' with q' the vertex of the translated coset.
class ExtendedHom {
public:
  ExtendedHom(FiniteQuotient quotient, Functional functional,
              long long modulus);

  const FiniteQuotient& quotient() const { return quotient_; }
  const HomologyBasis& basis() const { return basis_; }
  const Functional& functional() const { return functional_; }
  long long modulus() const { return modulus_; }

  /// Integer functional value on a subgroup element (no reduction mod N).
  long long retraction_value(const Word& k) const;

  /// Value mod N.
  long long sigma(const Word& k) const;

  WreathElement eval(const Word& g) const;

  /// gcd over the centralizer-orbit representatives g of the integer values
  /// of the retraction on (b^n)^g, n the degree of b; 0 when all values
  /// vanish.
  long long d_value(const Word& b) const;

private:
  FiniteQuotient quotient_;
  HomologyBasis basis_;
  Functional functional_;
  long long modulus_;
};

} // namespace fgcert

#endif
