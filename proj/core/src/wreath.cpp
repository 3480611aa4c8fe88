#include "fgcert/wreath.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace fgcert {

namespace {

long long mod_norm(long long x, long long n) {
  if (n == 1)
    return 0;
  long long r = x % n;
  return r < 0 ? r + n : r;
}

void check_shapes(const WreathElement& x, const WreathElement& y) {
  if (x.modulus != y.modulus || x.base.size() != y.base.size() ||
      x.top.size() != y.top.size())
    throw ShapeMismatch("wreath elements of different shapes");
}

} // namespace

bool WreathElement::base_only() const {
  for (std::size_t v = 0; v < top.size(); ++v)
    if (top[v] != static_cast<int>(v))
      return false;
  return true;
}

bool WreathElement::identity() const {
  return base_only() &&
         std::all_of(base.begin(), base.end(),
                     [](long long x) { return x == 0; });
}

WreathElement wreath_identity(long long modulus, int size) {
  if (modulus < 1)
    throw ShapeMismatch("wreath modulus must be >= 1");
  return WreathElement{modulus,
                       std::vector<long long>(static_cast<size_t>(size), 0),
                       identity_permutation(size)};
}

WreathElement wreath_multiply(const WreathElement& x, const WreathElement& y) {
  check_shapes(x, y);
  Permutation inv_top = inverse_permutation(x.top);
  // Tops are left translations, so the product translates by y first:
  // (x.top o y.top)(v) = x.top(y.top(v)).
  WreathElement out{x.modulus, std::vector<long long>(x.base.size()),
                    compose(y.top, x.top)};
  for (std::size_t q = 0; q < x.base.size(); ++q)
    out.base[q] = mod_norm(
        x.base[q] + y.base[static_cast<size_t>(inv_top[q])], x.modulus);
  return out;
}

WreathElement wreath_inverse(const WreathElement& x) {
  WreathElement out{x.modulus, std::vector<long long>(x.base.size()),
                    inverse_permutation(x.top)};
  for (std::size_t q = 0; q < x.base.size(); ++q)
    out.base[q] =
        mod_norm(-x.base[static_cast<size_t>(x.top[q])], x.modulus);
  return out;
}

WreathElement wreath_power(const WreathElement& x, long long k) {
  if (k < 0)
    return wreath_power(wreath_inverse(x), -k);
  WreathElement acc =
      wreath_identity(x.modulus, static_cast<int>(x.top.size()));
  WreathElement sq = x;
  while (k > 0) {
    if (k & 1)
      acc = wreath_multiply(acc, sq);
    k >>= 1;
    if (k > 0)
      sq = wreath_multiply(sq, sq);
  }
  return acc;
}

long long wreath_order(const WreathElement& x) {
  long long r = permutation_order(x.top);
  WreathElement pow = wreath_power(x, r);
  long long additive = 1;
  for (long long v : pow.base) {
    long long value = mod_norm(v, x.modulus);
    long long ord = value == 0 ? 1 : x.modulus / std::gcd(x.modulus, value);
    additive = std::lcm(additive, ord);
  }
  return r * additive;
}

bool base_conjugate_test(const WreathElement& x, const WreathElement& y,
                         const std::vector<Permutation>& translations) {
  check_shapes(x, y);
  if (!x.base_only() || !y.base_only())
    throw ShapeMismatch("base_conjugate_test needs base-only elements");
  for (const Permutation& t : translations) {
    if (t.size() != x.base.size())
      throw ShapeMismatch("translation of wrong degree");
    bool match = true;
    for (std::size_t q = 0; q < x.base.size() && match; ++q)
      match = mod_norm(x.base[static_cast<size_t>(t[q])], x.modulus) ==
              mod_norm(y.base[q], y.modulus);
    if (match)
      return true;
  }
  return false;
}

long long predicted_order(long long n, long long N, long long d) {
  if (n < 1 || N < 1 || d < 0)
    throw ShapeMismatch("predicted_order needs n >= 1, N >= 1, d >= 0");
  if (d == 0)
    return n; // lcm(N, 0)/0 reads as 1
  return n * (N / std::gcd(N, d));
}

FiniteQuotient::FiniteQuotient(CoverGraph cover) : cover_(std::move(cover)) {
  if (!cover_.is_normal())
    throw NotNormal("finite quotient requires a normal cover");
  reps_ = cover_.coset_reps();
}

Permutation FiniteQuotient::left_translation(const Word& g) const {
  const int g0 = cover_.act(0, g);
  Permutation t(static_cast<size_t>(size()));
  for (int v = 0; v < size(); ++v)
    t[static_cast<size_t>(v)] = cover_.act(g0, reps_[static_cast<size_t>(v)]);
  return t;
}

std::vector<Permutation> FiniteQuotient::left_translations() const {
  std::vector<Permutation> out;
  out.reserve(static_cast<size_t>(size()));
  for (int v = 0; v < size(); ++v)
    out.push_back(left_translation(reps_[static_cast<size_t>(v)]));
  return out;
}

ExtendedHom::ExtendedHom(FiniteQuotient quotient, Functional functional,
                         long long modulus)
    : quotient_(std::move(quotient)), basis_(quotient_.cover()),
      functional_(std::move(functional)), modulus_(modulus) {
  if (static_cast<int>(functional_.size()) != basis_.betti())
    throw DimensionMismatch("functional length must match the homology "
                            "basis of the cover");
  if (modulus_ < 1)
    throw ShapeMismatch("modulus must be >= 1");
}

long long ExtendedHom::retraction_value(const Word& k) const {
  ClassVector cls = basis_.class_of(k);
  __int128 acc = 0;
  for (std::size_t i = 0; i < cls.size(); ++i)
    acc += static_cast<__int128>(functional_[i]) * cls[i];
  if (acc > std::numeric_limits<long long>::max() ||
      acc < std::numeric_limits<long long>::min())
    throw Overflow("retraction value exceeds 64 bits");
  return static_cast<long long>(acc);
}

long long ExtendedHom::sigma(const Word& k) const {
  return mod_norm(retraction_value(k), modulus_);
}

WreathElement ExtendedHom::eval(const Word& g) const {
  const CoverGraph& cover = quotient_.cover();
  const std::vector<Word>& reps = quotient_.reps();
  WreathElement out{modulus_,
                    std::vector<long long>(static_cast<size_t>(quotient_.size())),
                    quotient_.left_translation(g)};
  const Word g_inv = invert(g);
  const int u = cover.act(0, g_inv);
  for (int q = 0; q < quotient_.size(); ++q) {
    // rep_q^-1 . g . rep_q' lies in the cover subgroup, with q' the vertex
    // of the coset of g^-1 rep_q.
    int q_prime = cover.act(u, reps[static_cast<size_t>(q)]);
    Word in_k = concat(concat(invert(reps[static_cast<size_t>(q)]), g),
                       reps[static_cast<size_t>(q_prime)]);
    out.base[static_cast<size_t>(q)] = sigma(in_k);
  }
  return out;
}

long long ExtendedHom::d_value(const Word& b) const {
  if (b.trivial())
    throw TrivialWord("d_value of the trivial word");
  const CoverGraph& cover = quotient_.cover();
  int n = cover.degree_of(b);
  Word pow_b = power(b, n);
  long long d = 0;
  for (const Word& rep : double_coset_reps(cover, b))
    d = std::gcd(d, retraction_value(conjugate(pow_b, rep)));
  return d;
}

} // namespace fgcert
