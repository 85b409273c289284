// Runs the twelve acceptance criteria and prints one line each.
// Usage: acceptance [small|full] [table_dir]

#include <cstdio>
#include <string>

#include "sumfree/verify.hpp"

int main(int argc, char** argv) {
  sumfree::VerifyOptions opts;
  opts.suite = sumfree::parse_suite(argc > 1 ? argv[1] : "full");
  if (argc > 2) opts.table_dir = argv[2];
  opts.on_result = [](const sumfree::CriterionResult& r) {
    std::puts(sumfree::format_result_line(r).c_str());
    std::fflush(stdout);
  };
  int failed = 0;
  for (const auto& r : sumfree::run_verification(opts)) failed += r.pass ? 0 : 1;
  std::printf("%d/12 criteria passed\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
