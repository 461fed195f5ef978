// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <iostream>

#include "omrel/selftest.hpp"

int main() {
  int failed = 0;
  for (const auto& info : omrel::suites()) {
    omrel::SuiteResult r;
    try {
      r = omrel::run_suite(info.name);
    } catch (const std::exception& e) {
      r.summary = std::string("exception: ") + e.what();
      r.limit_seconds = info.limit_seconds;
    }
    bool ok = r.ok();
    failed += !ok;
    std::printf("%s criterion %d (%s): %.2fs of %.0fs; %s\n", ok ? "PASS" : "FAIL", info.criterion,
                info.title.c_str(), r.seconds, info.limit_seconds, r.summary.c_str());
    if (!r.passed) std::cout << r.details.dump(2) << "\n";
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
