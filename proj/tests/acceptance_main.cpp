// Acceptance gate: one pass/fail line per criterion; exit 1 on any failure.
#include <cstdio>
#include <string>

#include "hk/acceptance.hpp"

int main(int argc, char** argv) {
  hk::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc)
      opts.only.push_back(argv[++i]);
    else if (a == "--corrupt-normalization")
      opts.corrupt_normalization = true;
    else {
      std::fprintf(stderr, "usage: %s [--only ID]... [--corrupt-normalization]\n", argv[0]);
      return 2;
    }
  }
  const auto results = hk::run_acceptance(opts);
  bool all = !results.empty();
  for (const auto& r : results) {
    std::printf("[%s] %-14s measured=%.3e threshold=%.3e (%.1fs)%s%s\n", r.pass ? "PASS" : "FAIL",
                r.id.c_str(), r.measured, r.threshold, r.seconds, r.detail.empty() ? "" : " ",
                r.detail.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
