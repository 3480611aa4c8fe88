// Exercises the installed command line interface end to end: exit code
// vocabulary, certificate files on disk, byte stability, tamper rejection.
// Takes the binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#ifdef _WIN32
#error "POSIX-only test driver"
#endif
#include <sys/wait.h>

namespace {

int failures = 0;

int run(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  if (rc == -1)
    return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void expect(const std::string& name, const std::string& cmd, int want) {
  int got = run(cmd);
  if (got == want) {
    std::printf("[ok]   %s\n", name.c_str());
  } else {
    std::printf("[FAIL] %s: exit %d, wanted %d\n", name.c_str(), got, want);
    ++failures;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void expect_contains(const std::string& name, const std::string& path,
                     const std::string& needle) {
  if (slurp(path).find(needle) != std::string::npos) {
    std::printf("[ok]   %s\n", name.c_str());
  } else {
    std::printf("[FAIL] %s: missing \"%s\" in %s\n", name.c_str(),
                needle.c_str(), path.c_str());
    ++failures;
  }
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_driver <binary>\n");
    return 2;
  }
  const std::string bin = argv[1];

  expect("oracle accepts a conjugate pair",
         bin + " oracle --rank 2 --a ab --b ba > cli_oracle.txt", 0);
  expect_contains("oracle prints conjugate", "cli_oracle.txt", "conjugate");
  expect("oracle rejects the commutator pair",
         bin + " oracle --rank 2 --a abAB --b baBA > cli_oracle2.txt", 1);
  expect_contains("oracle prints non-conjugate", "cli_oracle2.txt",
                  "non-conjugate");
  expect("oracle on equal words",
         bin + " oracle --rank 2 --a a --b a > /dev/null", 0);

  expect("certify nonconjugacy writes a certificate",
         bin + " certify nonconjugacy --rank 2 --a a --b b -o cli_ab.json"
               " > /dev/null",
         0);
  expect("verify accepts the fresh certificate",
         bin + " verify cli_ab.json > cli_verify.txt", 0);
  expect_contains("verify prints the fact list", "cli_verify.txt",
                  "verdict: accept");

  expect("identical command reproduces identical bytes",
         bin + " certify nonconjugacy --rank 2 --a a --b b -o cli_ab2.json"
               " > /dev/null && cmp -s cli_ab.json cli_ab2.json",
         0);

  {
    std::string bytes = slurp("cli_ab.json");
    std::string needle = "\"modulus\":[2]";
    auto pos = bytes.find(needle);
    if (pos == std::string::npos) {
      std::printf("[FAIL] expected modulus 2 in cli_ab.json\n");
      ++failures;
    } else {
      bytes.replace(pos, needle.size(), "\"modulus\":[1]");
      std::ofstream out("cli_tampered.json", std::ios::binary);
      out << bytes;
    }
  }
  expect("verify rejects a tampered modulus",
         bin + " verify cli_tampered.json > cli_tamper.txt", 1);
  expect_contains("rejection names the failing fact", "cli_tamper.txt",
                  "[FAIL]");

  {
    std::ofstream out("cli_truncated.json", std::ios::binary);
    out << "{\"version\": 1, \"kind\": \"nonconju";
  }
  expect("truncated JSON is malformed",
         bin + " verify cli_truncated.json 2> /dev/null", 65);
  expect("missing file is malformed",
         bin + " verify cli_no_such_file.json 2> /dev/null", 65);

  expect("conjugate inputs exit 2",
         bin + " certify nonconjugacy --rank 2 --a ab --b ba -o cli_x.json"
               " > cli_conj.txt",
         2);
  expect_contains("conjugator is printed", "cli_conj.txt", "conjugator:");
  expect("equal inputs exit 2",
         bin + " certify nonconjugacy --rank 2 --a a --b a -o cli_x.json"
               " > /dev/null",
         2);

  expect("word syntax errors exit 64",
         bin + " certify nonconjugacy --rank 2 --a 'a?' --b b -o cli_x.json"
               " 2> /dev/null",
         64);
  expect("rank violations exit 64",
         bin + " oracle --rank 1 --a ab --b a 2> /dev/null", 64);
  expect("unknown flags exit 64",
         bin + " oracle --rank 2 --a a --b b --frobnicate 2> /dev/null", 64);

  expect("dependent omnipotence elements exit 4",
         bin + " certify omnipotence --rank 2 --elements a,aa --orders 1,1"
               " -o cli_x.json 2> /dev/null",
         4);

  expect("omnipotence certificate for the generators",
         bin + " certify omnipotence --rank 2 --elements a,b --orders 2,3"
               " -o cli_omni.json > cli_omni.txt",
         0);
  expect_contains("achieved orders are printed", "cli_omni.txt",
                  "K=1 orders=[2,3]");
  expect("verify accepts the omnipotence certificate",
         bin + " verify cli_omni.json > /dev/null", 0);

  expect("flagship pair certifies through the CLI",
         bin + " certify nonconjugacy --rank 2 --a abAB --b baBA"
               " -o cli_flag.json > /dev/null",
         0);
  expect("flagship certificate verifies",
         bin + " verify cli_flag.json > /dev/null", 0);
  expect("concurrent search reproduces the same bytes",
         bin + " certify nonconjugacy --rank 2 --a abAB --b baBA --jobs 4"
               " -o cli_flag_jobs.json > /dev/null"
               " && cmp -s cli_flag.json cli_flag_jobs.json",
         0);

  expect("selftest passes", bin + " selftest --seed 7 > /dev/null", 0);

  if (failures == 0)
    std::printf("cli driver: all scenarios passed\n");
  return failures == 0 ? 0 : 1;
}
