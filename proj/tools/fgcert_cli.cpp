// Command line frontend: certificate construction, verification, the
// conjugacy oracle, and a seeded property self-test.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fgcert/certify.hpp"

namespace {

using namespace fgcert;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitConjugate = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitNotIndependent = 4;
constexpr int kExitUsage = 64;
constexpr int kExitBadFile = 65;
constexpr int kExitInternal = 70;

struct Options {
  int rank = 2;
  std::string a;
  std::string b;
  std::string elements;
  std::string orders;
  std::string out;
  std::string path;
  std::string mode = "weak";
  SearchCaps caps;
  unsigned long long seed = 12345;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ','))
    out.push_back(item);
  return out;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot open " + path + " for writing");
  out << bytes;
}

int run_certify_nonconjugacy(const Options& opt) {
  Word a = parse_word(opt.rank, opt.a);
  Word b = parse_word(opt.rank, opt.b);
  NonconjugacyCertificate cert =
      certify_nonconjugate(a, b, opt.caps, opt.mode != "strong");
  write_file(opt.out, certificate_to_json(cert));
  std::cout << "certificate written to " << opt.out << " (cover degree "
            << cert.cover_degree << ", N=" << cert.modulus << ", mode="
            << (cert.weak ? "weak" : "strong") << ")\n";
  return kExitAccept;
}

int run_certify_omnipotence(const Options& opt) {
  std::vector<Word> elements;
  for (const std::string& text : split_list(opt.elements))
    elements.push_back(parse_word(opt.rank, text));
  std::vector<long long> targets;
  for (const std::string& text : split_list(opt.orders)) {
    try {
      targets.push_back(std::stoll(text));
    } catch (const std::exception&) {
      throw ParseError("bad order value: " + text);
    }
  }
  OmnipotenceCertificate cert =
      certify_omnipotence(elements, targets, opt.caps);
  write_file(opt.out, certificate_to_json(cert));
  long long k = 1;
  for (long long m : cert.degrees)
    k *= m;
  std::cout << "K=" << k << " orders=[";
  for (std::size_t i = 0; i < cert.targets.size(); ++i)
    std::cout << (i ? "," : "") << cert.targets[i] * k;
  std::cout << "]\n";
  std::cout << "certificate written to " << opt.out << " (cover degree "
            << cert.cover_degree << ")\n";
  return kExitAccept;
}

int run_verify(const Options& opt) {
  std::ifstream in(opt.path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << opt.path << "\n";
    return kExitBadFile;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Certificate cert = certificate_from_json(buffer.str());
  VerificationReport report = std::visit(
      [](const auto& c) {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>,
                                     NonconjugacyCertificate>)
          return verify_nonconjugate(c);
        else
          return verify_omnipotence(c);
      },
      cert);
  std::cout << report.summary();
  return report.accepted() ? kExitAccept : kExitReject;
}

int run_oracle(const Options& opt) {
  Word a = parse_word(opt.rank, opt.a);
  Word b = parse_word(opt.rank, opt.b);
  if (oracle_conjugate(a, b)) {
    std::cout << "conjugate\n";
    return 0;
  }
  std::cout << "non-conjugate\n";
  return 1;
}

// ---------------------------------------------------------------------------
// selftest: seeded property checks over the core operations.

Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<int> raw;
  int target = len(rng);
  for (int i = 0; i < target; ++i)
    raw.push_back(gen(rng) * (sign(rng) ? 1 : -1));
  return Word(rank, raw);
}

bool selftest_words(std::mt19937_64& rng) {
  for (int trial = 0; trial < 300; ++trial) {
    Word w = random_word(rng, 2, 10);
    Word h = random_word(rng, 2, 6);
    if (Word(2, w.letters()) != w)
      return false;
    if (!oracle_conjugate(w, conjugate(w, h)))
      return false;
    if (cyclic_reduce(conjugate(w, h)).letters != cyclic_reduce(w).letters)
      return false;
    if (!w.trivial()) {
      PrimitiveRoot root = primitive_root(w);
      if (power(root.root, root.exponent) != w)
        return false;
    }
  }
  return true;
}

bool selftest_hom_law(std::mt19937_64& rng) {
  std::vector<CoverGraph> covers;
  covers.push_back(cyclic_cover(2, {1, 1}, 3));
  covers.push_back(cyclic_cover(2, {1, 0}, 2));
  covers.push_back(regular_closure(marshall_hall_cover(parse_word(2, "abAB"))));
  for (const CoverGraph& cover : covers) {
    FiniteQuotient quotient(cover);
    HomologyBasis basis(cover);
    Functional phi(static_cast<size_t>(basis.betti()), 0);
    for (std::size_t i = 0; i < phi.size(); ++i)
      phi[i] = static_cast<long long>(i % 3) - 1;
    ExtendedHom hom(quotient, phi, 6);
    for (int trial = 0; trial < 60; ++trial) {
      Word g = random_word(rng, 2, 8);
      Word h = random_word(rng, 2, 8);
      if (hom.eval(concat(g, h)) !=
          wreath_multiply(hom.eval(g), hom.eval(h)))
        return false;
    }
  }
  return true;
}

bool selftest_solver(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim_dist(1, 4);
  std::uniform_int_distribution<int> rows_dist(0, 3);
  std::uniform_int_distribution<long long> entry(-2, 2);
  for (int trial = 0; trial < 150; ++trial) {
    int dim = dim_dist(rng);
    ClassVector target(static_cast<size_t>(dim));
    for (long long& x : target)
      x = entry(rng);
    std::vector<ClassVector> kill(static_cast<size_t>(rows_dist(rng)),
                                  ClassVector(static_cast<size_t>(dim)));
    for (ClassVector& row : kill)
      for (long long& x : row)
        x = entry(rng);
    auto phi = find_functional(target, kill);
    // Exhaustive covectors with entries in [-3, 3].
    bool brute = false;
    std::vector<long long> cand(static_cast<size_t>(dim), -3);
    while (true) {
      long long t = 0;
      for (int i = 0; i < dim; ++i)
        t += cand[static_cast<size_t>(i)] * target[static_cast<size_t>(i)];
      bool ok = t == 1;
      for (const ClassVector& row : kill) {
        long long s = 0;
        for (int i = 0; i < dim; ++i)
          s += cand[static_cast<size_t>(i)] * row[static_cast<size_t>(i)];
        ok = ok && s == 0;
      }
      if (ok) {
        brute = true;
        break;
      }
      int i = 0;
      while (i < dim && cand[static_cast<size_t>(i)] == 3)
        cand[static_cast<size_t>(i++)] = -3;
      if (i == dim)
        break;
      ++cand[static_cast<size_t>(i)];
    }
    if (brute && !phi)
      return false;
    if (phi) {
      long long t = 0;
      for (int i = 0; i < dim; ++i)
        t += (*phi)[static_cast<size_t>(i)] * target[static_cast<size_t>(i)];
      if (t != 1)
        return false;
      for (const ClassVector& row : kill) {
        long long s = 0;
        for (int i = 0; i < dim; ++i)
          s += (*phi)[static_cast<size_t>(i)] * row[static_cast<size_t>(i)];
        if (s != 0)
          return false;
      }
    }
  }
  return true;
}

bool selftest_cyclic_cover(std::mt19937_64& rng) {
  CoverGraph cover = cyclic_cover(2, {1, 2}, 5);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = random_word(rng, 2, 6);
    std::vector<long long> ab = abelianization(w);
    bool expected = ((ab[0] * 1 + ab[1] * 2) % 5 + 5) % 5 == 0;
    if (cover.contains(w) != expected)
      return false;
  }
  return true;
}

int run_selftest(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  struct Suite {
    const char* name;
    bool (*run)(std::mt19937_64&);
  };
  const Suite suites[] = {
      {"word algebra and conjugacy oracle", selftest_words},
      {"extension homomorphism law", selftest_hom_law},
      {"integer functional solver vs brute force", selftest_solver},
      {"cyclic cover membership", selftest_cyclic_cover},
  };
  bool all = true;
  for (const Suite& suite : suites) {
    bool ok = suite.run(rng);
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << suite.name << "\n";
    all = all && ok;
  }
  std::cout << (all ? "selftest passed" : "selftest FAILED") << "\n";
  return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-quotient certificates for free groups: non-conjugacy "
               "witnesses and prescribed element orders, via finite covers, "
               "homology retractions and wreath products"};
  app.require_subcommand(1);

  Options opt;

  auto add_caps = [&](CLI::App* cmd) {
    cmd->add_option("--max-index", opt.caps.max_index,
                    "cover degree cap for the search");
    cmd->add_option("--max-prime", opt.caps.max_prime,
                    "largest prime for cyclic refinements");
    cmd->add_option("--max-rounds", opt.caps.max_rounds,
                    "refinement round cap");
    cmd->add_option("--jobs", opt.caps.jobs,
                    "evaluate refinement candidates concurrently");
  };

  CLI::App* certify = app.add_subcommand("certify", "construct a certificate");
  certify->require_subcommand(1);

  CLI::App* noncon = certify->add_subcommand(
      "nonconjugacy", "certify that two words are not conjugate");
  noncon->add_option("--rank", opt.rank, "number of free generators")
      ->required();
  noncon->add_option("--a", opt.a, "first word")->required();
  noncon->add_option("--b", opt.b, "second word")->required();
  noncon->add_option("-o,--out", opt.out, "output certificate path")
      ->required();
  noncon->add_option("--mode", opt.mode,
                     "strong: require killing functional; weak (default): "
                     "fall back to the inequality form")
      ->check(CLI::IsMember({"strong", "weak"}));
  add_caps(noncon);

  CLI::App* omni = certify->add_subcommand(
      "omnipotence", "certify prescribed orders for an independent set");
  omni->add_option("--rank", opt.rank, "number of free generators")
      ->required();
  omni->add_option("--elements", opt.elements, "comma-separated words")
      ->required();
  omni->add_option("--orders", opt.orders, "comma-separated multipliers")
      ->required();
  omni->add_option("-o,--out", opt.out, "output certificate path")
      ->required();
  add_caps(omni);

  CLI::App* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("path", opt.path, "certificate file")->required();

  CLI::App* oracle = app.add_subcommand(
      "oracle", "decide conjugacy directly by cyclic reduction");
  oracle->add_option("--rank", opt.rank, "number of free generators")
      ->required();
  oracle->add_option("--a", opt.a, "first word")->required();
  oracle->add_option("--b", opt.b, "second word")->required();

  CLI::App* selftest =
      app.add_subcommand("selftest", "run seeded property checks");
  selftest->add_option("--seed", opt.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (noncon->parsed())
      return run_certify_nonconjugacy(opt);
    if (omni->parsed())
      return run_certify_omnipotence(opt);
    if (verify->parsed())
      return run_verify(opt);
    if (oracle->parsed())
      return run_oracle(opt);
    if (selftest->parsed())
      return run_selftest(opt);
  } catch (const ElementsConjugate& e) {
    std::cout << "conjugator: " << to_text(e.witness) << "\n";
    return kExitConjugate;
  } catch (const SearchExhausted& e) {
    std::cerr << "search exhausted: " << e.what() << "\n";
    return kExitExhausted;
  } catch (const NotIndependent& e) {
    std::cerr << "not independent: " << e.what() << "\n";
    return kExitNotIndependent;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IndexOutOfRange& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MalformedCertificate& e) {
    std::cerr << "malformed certificate: " << e.what() << "\n";
    return kExitBadFile;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
