#include "fgcert/certify.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace fgcert {

namespace {

long long checked_mul(long long a, long long b) {
  long long out;
  if (__builtin_mul_overflow(a, b, &out))
    throw Overflow("product exceeds 64 bits");
  return out;
}

/// Smallest modulus N >= 2 with m*v != n mod N for every recorded value v.
/// Exists because every m*v differs from n over the integers.
long long smallest_modulus(long long m, long long n,
                           std::span<const long long> values) {
  long long bound = 2;
  for (long long v : values)
    bound = std::max(bound, std::llabs(checked_mul(m, v) - n) + 1);
  for (long long N = 2; N <= bound + 1; ++N) {
    bool ok = true;
    for (long long v : values)
      if ((checked_mul(m, v) - n) % N == 0) {
        ok = false;
        break;
      }
    if (ok)
      return N;
  }
  throw Error("no separating modulus found"); // unreachable
}

struct FactList {
  std::vector<CheckedFact> facts;

  /// Evaluates `f`, recording exceptions as failures.
  template <typename F> bool check(const std::string& desc, F&& f) {
    bool ok = false;
    try {
      ok = f();
    } catch (const Error&) {
      ok = false;
    }
    facts.push_back({desc, ok});
    return ok;
  }
};

} // namespace

bool VerificationReport::accepted() const {
  return !facts.empty() &&
         std::all_of(facts.begin(), facts.end(),
                     [](const CheckedFact& f) { return f.passed; });
}

std::string VerificationReport::summary() const {
  std::ostringstream out;
  for (const CheckedFact& f : facts)
    out << (f.passed ? "[ok]   " : "[FAIL] ") << f.description << "\n";
  if (!orders.empty()) {
    out << "orders:";
    for (long long o : orders)
      out << " " << o;
    out << "\n";
  }
  out << (accepted() ? "verdict: accept" : "verdict: reject") << "\n";
  return out.str();
}

NonconjugacyCertificate certify_nonconjugate(const Word& a, const Word& b,
                                             const SearchCaps& caps,
                                             bool allow_weak) {
  if (a.trivial() || b.trivial())
    throw TrivialWord("certificates require nontrivial words");
  if (a.rank() != b.rank())
    throw RankMismatch("certify_nonconjugate over different ranks");
  if (oracle_conjugate(a, b)) {
    CyclicWord ca = cyclic_reduce(a);
    CyclicWord cb = cyclic_reduce(b);
    Word witness = concat(ca.conjugator, invert(cb.conjugator));
    throw ElementsConjugate("the words are conjugate via " + to_text(witness),
                            witness);
  }

  std::array<Word, 1> bs{b};
  SearchResult found = independence_search(a, bs, caps, allow_weak);

  NonconjugacyCertificate cert;
  cert.rank = a.rank();
  cert.a = a;
  cert.b = b;
  cert.cover_rank = found.cover.rank();
  cert.cover_degree = found.cover.degree();
  cert.cover_perms = found.cover.perms();
  cert.m = found.m;
  cert.n = found.degrees.at(0);
  cert.functional = found.functional;
  cert.weak = found.weak;
  cert.modulus = smallest_modulus(cert.m, cert.n, found.values.at(0));
  return cert;
}

VerificationReport verify_nonconjugate(const NonconjugacyCertificate& cert) {
  VerificationReport report;
  FactList facts;

  bool shape = facts.check("words are nontrivial, of the certificate rank",
                           [&] {
                             return cert.rank >= 1 && cert.rank <= 26 &&
                                    !cert.a.trivial() && !cert.b.trivial() &&
                                    cert.a.rank() == cert.rank &&
                                    cert.b.rank() == cert.rank;
                           });
  if (!shape) {
    report.facts = std::move(facts.facts);
    return report;
  }

  facts.check("words are not conjugate (cyclic-form oracle)",
              [&] { return !oracle_conjugate(cert.a, cert.b); });

  std::optional<CoverGraph> cover;
  bool valid = facts.check(
      "cover tables form a valid connected cover of the stated rank and "
      "degree",
      [&] {
        cover.emplace(cert.cover_rank, cert.cover_perms);
        return cert.cover_rank == cert.rank &&
               cover->degree() == cert.cover_degree;
      });
  if (!valid || !cover) {
    report.facts = std::move(facts.facts);
    return report;
  }

  bool normal =
      facts.check("cover subgroup is normal", [&] { return cover->is_normal(); });
  if (!normal) {
    report.facts = std::move(facts.facts);
    return report;
  }

  facts.check("m and n are the degrees of a and b in the cover", [&] {
    return cover->degree_of(cert.a) == cert.m &&
           cover->degree_of(cert.b) == cert.n;
  });

  HomologyBasis basis(*cover);
  bool length =
      facts.check("functional length matches the homology basis",
                  [&] { return static_cast<int>(cert.functional.size()) ==
                               basis.betti(); });
  if (!length || cert.m != cover->degree_of(cert.a) ||
      cert.n != cover->degree_of(cert.b)) {
    report.facts = std::move(facts.facts);
    return report;
  }

  auto value_of = [&](const Word& w) {
    ClassVector cls = basis.class_of(w);
    __int128 acc = 0;
    for (std::size_t i = 0; i < cls.size(); ++i)
      acc += static_cast<__int128>(cert.functional[i]) * cls[i];
    if (acc > std::numeric_limits<long long>::max() ||
        acc < std::numeric_limits<long long>::min())
      throw Overflow("functional value exceeds 64 bits");
    return static_cast<long long>(acc);
  };

  facts.check("functional evaluates to 1 on the class of a^m",
              [&] { return value_of(power(cert.a, cert.m)) == 1; });

  facts.check("modulus is at least 2", [&] { return cert.modulus >= 2; });

  std::vector<long long> values;
  facts.check("m*phi((b^n)^g) differs from n mod the modulus at every "
              "vertex representative",
              [&] {
                Word pow_b = power(cert.b, cert.n);
                bool ok = true;
                for (const Word& rep : cover->coset_reps()) {
                  long long v = value_of(conjugate(pow_b, rep));
                  values.push_back(v);
                  long long diff = checked_mul(cert.m, v) - cert.n;
                  ok = ok && cert.modulus >= 2 && diff % cert.modulus != 0;
                }
                return ok;
              });

  facts.check("mode tag matches the recorded values",
              [&] {
                bool all_zero = std::all_of(values.begin(), values.end(),
                                            [](long long v) { return v == 0; });
                return !values.empty() && cert.weak == !all_zero;
              });

  facts.check("images of a^{mn} and b^{mn} in the wreath product are "
              "non-conjugate base elements",
              [&] {
                FiniteQuotient quotient(*cover);
                ExtendedHom tau(quotient, cert.functional, cert.modulus);
                long long mn = checked_mul(cert.m, cert.n);
                WreathElement x = wreath_power(tau.eval(cert.a), mn);
                WreathElement y = wreath_power(tau.eval(cert.b), mn);
                if (!x.base_only() || !y.base_only())
                  return false;
                return !base_conjugate_test(x, y, quotient.left_translations());
              });

  report.facts = std::move(facts.facts);
  return report;
}

namespace {

/// Per-element strong evaluation on a fixed shared cover. Returns the
/// functionals or the index blamed for failure.
struct SharedEval {
  bool ok = false;
  std::vector<Functional> functionals;
  std::vector<long long> degrees;
  std::size_t failed_i = 0;
};

SharedEval evaluate_shared(const CoverGraph& cover,
                           std::span<const Word> elements) {
  SharedEval out;
  HomologyBasis basis(cover);
  for (const Word& a : elements)
    out.degrees.push_back(cover.degree_of(a));

  // Orbit-representative classes of every element's lifts, reused across i.
  std::vector<std::vector<ClassVector>> classes(elements.size());
  for (std::size_t j = 0; j < elements.size(); ++j) {
    Word pow =
        power(elements[j], static_cast<long long>(out.degrees[j]));
    for (const Word& rep : double_coset_reps(cover, elements[j]))
      classes[j].push_back(basis.class_of(conjugate(pow, rep)));
  }

  for (std::size_t i = 0; i < elements.size(); ++i) {
    ClassVector target = basis.class_of(
        power(elements[i], static_cast<long long>(out.degrees[i])));
    std::vector<ClassVector> kill;
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (j != i)
        kill.insert(kill.end(), classes[j].begin(), classes[j].end());
    auto phi = find_functional(target, kill);
    if (!phi) {
      out.failed_i = i;
      return out;
    }
    out.functionals.push_back(std::move(*phi));
  }
  out.ok = true;
  return out;
}

} // namespace

OmnipotenceCertificate certify_omnipotence(std::span<const Word> elements,
                                           std::span<const long long> targets,
                                           const SearchCaps& caps) {
  if (elements.empty() || elements.size() != targets.size())
    throw DimensionMismatch("need one target order per element");
  for (const Word& a : elements)
    if (a.trivial())
      throw TrivialWord("certificates require nontrivial words");
  for (long long p : targets)
    if (p < 1)
      throw DimensionMismatch("target multipliers must be positive");
  if (auto pair = find_dependent_pair(elements))
    throw NotIndependent("elements " + to_text(elements[pair->first]) +
                             " and " + to_text(elements[pair->second]) +
                             " are not independent",
                         pair->first, pair->second);

  // Per-element searches, then one shared normal cover refined until the
  // strong system solves for every element simultaneously.
  std::optional<CoverGraph> shared;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    std::vector<Word> others;
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (j != i)
        others.push_back(elements[j]);
    SearchResult res = independence_search(elements[i], others, caps, false);
    shared = shared ? regular_closure(intersect(*shared, res.cover),
                                      caps.max_index)
                    : regular_closure(res.cover, caps.max_index);
  }

  SharedEval eval = evaluate_shared(*shared, elements);
  for (int round = 0; !eval.ok; ++round) {
    if (round >= caps.max_rounds)
      throw SearchExhausted("no shared cover admits all retractions; "
                            "stuck on " +
                            to_text(elements[eval.failed_i]));
    // Deepen along the element whose system failed, then re-run everything
    // on the refined cover.
    std::vector<Word> others;
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (j != eval.failed_i)
        others.push_back(elements[j]);
    SearchResult res = independence_search(elements[eval.failed_i], others,
                                           caps, false, &*shared);
    shared = res.cover;
    eval = evaluate_shared(*shared, elements);
  }

  OmnipotenceCertificate cert;
  cert.rank = elements.front().rank();
  cert.elements.assign(elements.begin(), elements.end());
  cert.targets.assign(targets.begin(), targets.end());
  cert.cover_rank = shared->rank();
  cert.cover_degree = shared->degree();
  cert.cover_perms = shared->perms();
  cert.degrees = eval.degrees;
  cert.functionals = eval.functionals;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    long long ni = targets[i];
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (j != i)
        ni = checked_mul(ni, eval.degrees[j]);
    cert.moduli.push_back(ni);
  }
  return cert;
}

VerificationReport verify_omnipotence(const OmnipotenceCertificate& cert) {
  VerificationReport report;
  FactList facts;
  const std::size_t l = cert.elements.size();

  bool shape = facts.check(
      "element, target, functional, modulus and degree counts agree", [&] {
        return l >= 1 && cert.targets.size() == l &&
               cert.functionals.size() == l && cert.moduli.size() == l &&
               cert.degrees.size() == l && cert.rank >= 1 && cert.rank <= 26;
      });
  if (!shape) {
    report.facts = std::move(facts.facts);
    return report;
  }

  facts.check("elements are nontrivial words of the certificate rank", [&] {
    for (const Word& a : cert.elements)
      if (a.trivial() || a.rank() != cert.rank)
        return false;
    return true;
  });

  facts.check("elements form an independent set",
              [&] { return are_independent(cert.elements); });

  facts.check("target multipliers are positive", [&] {
    return std::all_of(cert.targets.begin(), cert.targets.end(),
                       [](long long p) { return p >= 1; });
  });

  std::optional<CoverGraph> cover;
  bool valid = facts.check(
      "cover tables form a valid connected cover of the stated rank and "
      "degree",
      [&] {
        cover.emplace(cert.cover_rank, cert.cover_perms);
        return cert.cover_rank == cert.rank &&
               cover->degree() == cert.cover_degree;
      });
  if (!valid || !cover) {
    report.facts = std::move(facts.facts);
    return report;
  }

  bool normal =
      facts.check("cover subgroup is normal", [&] { return cover->is_normal(); });
  if (!normal) {
    report.facts = std::move(facts.facts);
    return report;
  }

  facts.check("stated degrees match the cover", [&] {
    for (std::size_t i = 0; i < l; ++i)
      if (cover->degree_of(cert.elements[i]) != cert.degrees[i])
        return false;
    return true;
  });

  HomologyBasis basis(*cover);
  bool lengths = facts.check("functional lengths match the homology basis",
                             [&] {
                               for (const Functional& f : cert.functionals)
                                 if (static_cast<int>(f.size()) !=
                                     basis.betti())
                                   return false;
                               return true;
                             });
  bool degrees_ok = true;
  for (std::size_t i = 0; i < l; ++i)
    degrees_ok = degrees_ok &&
                 cover->degree_of(cert.elements[i]) == cert.degrees[i];
  if (!lengths || !degrees_ok) {
    report.facts = std::move(facts.facts);
    return report;
  }

  facts.check("moduli follow the product formula N_i = p_i prod_{j != i} m_j",
              [&] {
                for (std::size_t i = 0; i < l; ++i) {
                  long long ni = cert.targets[i];
                  for (std::size_t j = 0; j < l; ++j)
                    if (j != i)
                      ni = checked_mul(ni, cert.degrees[j]);
                  if (cert.moduli[i] != ni)
                    return false;
                }
                return true;
              });

  auto value_of = [&](const Functional& phi, const Word& w) {
    ClassVector cls = basis.class_of(w);
    __int128 acc = 0;
    for (std::size_t i = 0; i < cls.size(); ++i)
      acc += static_cast<__int128>(phi[i]) * cls[i];
    if (acc > std::numeric_limits<long long>::max() ||
        acc < std::numeric_limits<long long>::min())
      throw Overflow("functional value exceeds 64 bits");
    return static_cast<long long>(acc);
  };

  facts.check("each functional evaluates to 1 on the class of a_i^{m_i}",
              [&] {
                for (std::size_t i = 0; i < l; ++i)
                  if (value_of(cert.functionals[i],
                               power(cert.elements[i], cert.degrees[i])) != 1)
                    return false;
                return true;
              });

  facts.check("each functional kills every lift of every other element "
              "(value 0 at every vertex)",
              [&] {
                std::vector<Word> reps = cover->coset_reps();
                for (std::size_t j = 0; j < l; ++j) {
                  Word pow = power(cert.elements[j], cert.degrees[j]);
                  for (const Word& rep : reps) {
                    Word conj = conjugate(pow, rep);
                    for (std::size_t i = 0; i < l; ++i)
                      if (i != j &&
                          value_of(cert.functionals[i], conj) != 0)
                        return false;
                  }
                }
                return true;
              });

  // Wreath-level order facts, recomputed with the extension homomorphisms.
  std::vector<std::vector<long long>> order_table(
      l, std::vector<long long>(l, 0));
  bool built = facts.check(
      "wreath orders match: o(sigma_i(a_i)) = N_i m_i and o(sigma_i(a_j)) "
      "= m_j for j != i",
      [&] {
        FiniteQuotient quotient(*cover);
        bool ok = true;
        for (std::size_t i = 0; i < l; ++i) {
          ExtendedHom sigma(quotient, cert.functionals[i], cert.moduli[i]);
          for (std::size_t j = 0; j < l; ++j) {
            order_table[i][j] = wreath_order(sigma.eval(cert.elements[j]));
            long long expected =
                i == j ? checked_mul(cert.moduli[i], cert.degrees[i])
                       : cert.degrees[j];
            ok = ok && order_table[i][j] == expected;
          }
        }
        return ok;
      });

  facts.check("product orders realize o(eta(a_i)) = p_i prod_j m_j", [&] {
    if (!built)
      return false;
    long long all = 1;
    for (long long mj : cert.degrees)
      all = checked_mul(all, mj);
    report.orders.clear();
    bool ok = true;
    for (std::size_t i = 0; i < l; ++i) {
      long long order = 1;
      for (std::size_t j = 0; j < l; ++j)
        order = std::lcm(order, order_table[j][i]);
      report.orders.push_back(order);
      ok = ok && order == checked_mul(cert.targets[i], all);
    }
    return ok;
  });

  report.facts = std::move(facts.facts);
  return report;
}

namespace {

using nlohmann::json;

json cover_to_json(int rank, int degree,
                   const std::vector<std::vector<int>>& perms) {
  return json{{"rank", rank}, {"degree", degree}, {"perms", perms}};
}

json words_to_json(std::span<const Word> words) {
  json out = json::array();
  for (const Word& w : words)
    out.push_back(to_text(w));
  return out;
}

std::string dump_canonical(const json& j) {
  // nlohmann objects iterate keys in sorted order, so a plain dump is
  // canonical.
  return j.dump() + "\n";
}

} // namespace

std::string certificate_to_json(const NonconjugacyCertificate& cert) {
  std::array<Word, 2> words{cert.a, cert.b};
  json j{{"version", 1},
         {"kind", "nonconjugacy"},
         {"rank", cert.rank},
         {"words", words_to_json(words)},
         {"cover", cover_to_json(cert.cover_rank, cert.cover_degree,
                                 cert.cover_perms)},
         {"m", json::array({cert.m, cert.n})},
         {"functional", json::array({cert.functional})},
         {"modulus", json::array({cert.modulus})},
         {"mode", cert.weak ? "weak" : "strong"},
         {"targets", json::array()}};
  return dump_canonical(j);
}

std::string certificate_to_json(const OmnipotenceCertificate& cert) {
  json j{{"version", 1},
         {"kind", "omnipotence"},
         {"rank", cert.rank},
         {"words", words_to_json(cert.elements)},
         {"cover", cover_to_json(cert.cover_rank, cert.cover_degree,
                                 cert.cover_perms)},
         {"m", cert.degrees},
         {"functional", cert.functionals},
         {"modulus", cert.moduli},
         {"mode", "strong"},
         {"targets", cert.targets}};
  return dump_canonical(j);
}

std::string certificate_to_json(const Certificate& cert) {
  return std::visit([](const auto& c) { return certificate_to_json(c); },
                    cert);
}

namespace {

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw MalformedCertificate(std::string("missing field: ") + key);
  return *it;
}

long long int_field(const json& j) {
  if (!j.is_number_integer())
    throw MalformedCertificate("expected an integer");
  return j.get<long long>();
}

std::vector<long long> int_array(const json& j) {
  if (!j.is_array())
    throw MalformedCertificate("expected an integer array");
  std::vector<long long> out;
  for (const json& x : j)
    out.push_back(int_field(x));
  return out;
}

std::vector<std::vector<int>> perm_tables(const json& j) {
  if (!j.is_array())
    throw MalformedCertificate("expected permutation tables");
  std::vector<std::vector<int>> out;
  for (const json& row : j) {
    if (!row.is_array())
      throw MalformedCertificate("expected permutation tables");
    std::vector<int> table;
    for (const json& x : row) {
      long long v = int_field(x);
      if (v < std::numeric_limits<int>::min() ||
          v > std::numeric_limits<int>::max())
        throw MalformedCertificate("vertex index out of range");
      table.push_back(static_cast<int>(v));
    }
    out.push_back(std::move(table));
  }
  return out;
}

} // namespace

Certificate certificate_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw MalformedCertificate("not a JSON object");
  if (int_field(field(j, "version")) != 1)
    throw MalformedCertificate("unsupported certificate version");
  const json& kind = field(j, "kind");
  if (!kind.is_string())
    throw MalformedCertificate("kind must be a string");

  long long rank = int_field(field(j, "rank"));
  if (rank < 1 || rank > 26)
    throw MalformedCertificate("rank out of range");

  const json& jwords = field(j, "words");
  if (!jwords.is_array() || jwords.empty())
    throw MalformedCertificate("words must be a nonempty array");
  std::vector<Word> words;
  for (const json& w : jwords) {
    if (!w.is_string())
      throw MalformedCertificate("words must be strings");
    try {
      words.push_back(parse_word(static_cast<int>(rank),
                                 w.get<std::string>()));
    } catch (const Error& e) {
      throw MalformedCertificate(std::string("bad word: ") + e.what());
    }
  }

  const json& jcover = field(j, "cover");
  if (!jcover.is_object())
    throw MalformedCertificate("cover must be an object");
  long long cover_rank = int_field(field(jcover, "rank"));
  long long cover_degree = int_field(field(jcover, "degree"));
  std::vector<std::vector<int>> perms = perm_tables(field(jcover, "perms"));

  std::vector<long long> degrees = int_array(field(j, "m"));
  std::vector<long long> moduli = int_array(field(j, "modulus"));
  std::vector<long long> targets = int_array(field(j, "targets"));

  const json& jfun = field(j, "functional");
  if (!jfun.is_array())
    throw MalformedCertificate("functional must be an array of arrays");
  std::vector<Functional> functionals;
  for (const json& f : jfun)
    functionals.push_back(int_array(f));

  const json& jmode = field(j, "mode");
  if (!jmode.is_string())
    throw MalformedCertificate("mode must be a string");
  std::string mode = jmode.get<std::string>();
  if (mode != "strong" && mode != "weak")
    throw MalformedCertificate("mode must be \"strong\" or \"weak\"");

  if (kind == "nonconjugacy") {
    if (words.size() != 2 || degrees.size() != 2 || moduli.size() != 1 ||
        functionals.size() != 1)
      throw MalformedCertificate("wrong field shapes for a nonconjugacy "
                                 "certificate");
    NonconjugacyCertificate cert;
    cert.rank = static_cast<int>(rank);
    cert.a = words[0];
    cert.b = words[1];
    cert.cover_rank = static_cast<int>(cover_rank);
    cert.cover_degree = static_cast<int>(cover_degree);
    cert.cover_perms = std::move(perms);
    cert.m = degrees[0];
    cert.n = degrees[1];
    cert.functional = std::move(functionals[0]);
    cert.modulus = moduli[0];
    cert.weak = mode == "weak";
    return cert;
  }
  if (kind == "omnipotence") {
    const std::size_t l = words.size();
    if (degrees.size() != l || moduli.size() != l || targets.size() != l ||
        functionals.size() != l)
      throw MalformedCertificate("wrong field shapes for an omnipotence "
                                 "certificate");
    OmnipotenceCertificate cert;
    cert.rank = static_cast<int>(rank);
    cert.elements = std::move(words);
    cert.targets = std::move(targets);
    cert.cover_rank = static_cast<int>(cover_rank);
    cert.cover_degree = static_cast<int>(cover_degree);
    cert.cover_perms = std::move(perms);
    cert.degrees = std::move(degrees);
    cert.functionals = std::move(functionals);
    cert.moduli = std::move(moduli);
    return cert;
  }
  throw MalformedCertificate("unknown certificate kind");
}

} // namespace fgcert
