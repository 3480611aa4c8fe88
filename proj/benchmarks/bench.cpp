#include <benchmark/benchmark.h>

#include "fgcert/certify.hpp"

using namespace fgcert;

namespace {

void BM_cyclic_reduce(benchmark::State& state) {
  Word w = power(parse_word(2, "abaB"), state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(cyclic_reduce(w));
}
BENCHMARK(BM_cyclic_reduce)->Arg(8)->Arg(64)->Arg(512);

void BM_regular_closure(benchmark::State& state) {
  CoverGraph mh = marshall_hall_cover(parse_word(2, "aabab"));
  for (auto _ : state)
    benchmark::DoNotOptimize(regular_closure(mh));
}
BENCHMARK(BM_regular_closure);

void BM_homology_basis(benchmark::State& state) {
  CoverGraph reg = regular_closure(marshall_hall_cover(parse_word(2, "aabab")));
  for (auto _ : state)
    benchmark::DoNotOptimize(HomologyBasis(reg));
}
BENCHMARK(BM_homology_basis);

void BM_find_functional(benchmark::State& state) {
  CoverGraph reg = regular_closure(marshall_hall_cover(parse_word(2, "aabab")));
  HomologyBasis basis(reg);
  Word a = parse_word(2, "aabab");
  Word b = parse_word(2, "ab");
  ClassVector target = basis.class_of(power(a, reg.degree_of(a)));
  std::vector<ClassVector> kill;
  Word pow_b = power(b, reg.degree_of(b));
  for (const Word& rep : reg.coset_reps())
    kill.push_back(basis.class_of(conjugate(pow_b, rep)));
  for (auto _ : state)
    benchmark::DoNotOptimize(find_functional(target, kill));
}
BENCHMARK(BM_find_functional);

void BM_certify_nonconjugate(benchmark::State& state) {
  Word a = parse_word(2, "abAB");
  Word b = parse_word(2, "baBA");
  for (auto _ : state)
    benchmark::DoNotOptimize(certify_nonconjugate(a, b));
}
BENCHMARK(BM_certify_nonconjugate);

void BM_verify_nonconjugate(benchmark::State& state) {
  NonconjugacyCertificate cert =
      certify_nonconjugate(parse_word(2, "abAB"), parse_word(2, "baBA"));
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_nonconjugate(cert));
}
BENCHMARK(BM_verify_nonconjugate);

void BM_certify_omnipotence(benchmark::State& state) {
  std::vector<Word> elements{parse_word(2, "abAB"), parse_word(2, "a")};
  std::vector<long long> targets{2, 3};
  for (auto _ : state)
    benchmark::DoNotOptimize(certify_omnipotence(elements, targets));
}
BENCHMARK(BM_certify_omnipotence);

void BM_eval_hom(benchmark::State& state) {
  NonconjugacyCertificate cert =
      certify_nonconjugate(parse_word(2, "abAB"), parse_word(2, "baBA"));
  FiniteQuotient quotient(cert.cover());
  ExtendedHom hom(quotient, cert.functional, cert.modulus);
  Word g = parse_word(2, "abbaBAbaBB");
  for (auto _ : state)
    benchmark::DoNotOptimize(hom.eval(g));
}
BENCHMARK(BM_eval_hom);

} // namespace

BENCHMARK_MAIN();
