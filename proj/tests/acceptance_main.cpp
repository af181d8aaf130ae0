#include <cstring>
#include <iostream>

#include <jostspec/acceptance.hpp>

// one PASS/FAIL line per criterion; "--quick" for the reduced grids
int main(int argc, char** argv) {
  jostspec::acceptance::Options o;
  for (int i = 1; i < argc; ++i)
    if (!std::strcmp(argv[i], "--quick")) o.quick = true;
  int failed = 0;
  for (const auto& c : jostspec::acceptance::all_criteria()) {
    auto r = c(o);
    std::cout << jostspec::acceptance::format_line(r) << std::endl;
    failed += !r.passed;
  }
  return failed ? 1 : 0;
}
