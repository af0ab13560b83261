#pragma once

#include <functional>
#include <string>
#include <vector>

namespace degen::testing {

// A small exact case. `run` returns an empty string on success, otherwise a
// description of the first mismatch.
struct TrivialCase {
  std::string name;
  std::function<std::string()> run;
};

std::vector<TrivialCase> trivial_cases();

}  // namespace degen::testing
