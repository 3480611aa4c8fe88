#ifndef FGCERT_CERTIFY_HPP
#define FGCERT_CERTIFY_HPP

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fgcert/wreath.hpp"

namespace fgcert {

/// Raised by certify_nonconjugate when the two words are conjugate; carries
/// a witness h with conjugate(a, h) = b.
class ElementsConjugate : public Error {
public:
  ElementsConjugate(const std::string& what, Word witness_)
      : Error(what), witness(std::move(witness_)) {}
  Word witness;
};

/// Self-contained non-conjugacy witness. The cover is stored as raw
/// permutation tables so that hostile inputs can be represented and every
/// structural fact re-checked by the verifier.
struct NonconjugacyCertificate {
  int rank = 0;
  Word a;
  Word b;
  int cover_rank = 0;
  int cover_degree = 0;
  std::vector<std::vector<int>> cover_perms;
  long long m = 0;
  long long n = 0;
  Functional functional;
  long long modulus = 0;
  bool weak = false;

  CoverGraph cover() const { return CoverGraph(cover_rank, cover_perms); }
};

/// Witness that the element orders (p_i * prod_j m_j) are realized in a
/// finite quotient, one retraction functional and modulus per element over
/// a single shared normal cover.
struct OmnipotenceCertificate {
  int rank = 0;
  std::vector<Word> elements;
  std::vector<long long> targets; // requested multipliers p_i
  int cover_rank = 0;
  int cover_degree = 0;
  std::vector<std::vector<int>> cover_perms;
  std::vector<long long> degrees; // m_i
  std::vector<Functional> functionals;
  std::vector<long long> moduli; // N_i

  CoverGraph cover() const { return CoverGraph(cover_rank, cover_perms); }
};

struct CheckedFact {
  std::string description;
  bool passed = false;
};

struct VerificationReport {
  std::vector<CheckedFact> facts;
  /// For omnipotence: the directly computed orders of the images of the
  /// elements in the product quotient.
  std::vector<long long> orders;

  bool accepted() const;
  /// One line per fact plus a verdict line.
  std::string summary() const;
};

NonconjugacyCertificate certify_nonconjugate(const Word& a, const Word& b,
                                             const SearchCaps& caps = {},
                                             bool allow_weak = true);

/// Recomputes every certificate fact from scratch (structure, degrees,
/// functional conditions, modulus inequality at every vertex) and then
/// cross-checks the conclusion in the wreath product: the image of a^{mn}
/// must not be a translate of the image of b^{mn}.
VerificationReport verify_nonconjugate(const NonconjugacyCertificate& cert);

OmnipotenceCertificate certify_omnipotence(std::span<const Word> elements,
                                           std::span<const long long> targets,
                                           const SearchCaps& caps = {});

VerificationReport verify_omnipotence(const OmnipotenceCertificate& cert);

using Certificate =
    std::variant<NonconjugacyCertificate, OmnipotenceCertificate>;

/// Canonical JSON bytes: sorted keys, base-10 integers, 0-indexed arrays,
/// trailing newline. Identical certificates serialize to identical bytes.
std::string certificate_to_json(const NonconjugacyCertificate& cert);
std::string certificate_to_json(const OmnipotenceCertificate& cert);
std::string certificate_to_json(const Certificate& cert);

/// Parses certificate JSON. Structural problems (bad JSON, missing or
/// mistyped fields, unparseable words) raise MalformedCertificate;
/// mathematical validity is left to the verifiers.
Certificate certificate_from_json(std::string_view text);

} // namespace fgcert

#endif
