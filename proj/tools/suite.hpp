#pragma once

#include <vector>

#include "tcr/blowup.hpp"
#include "tcr/config.hpp"

namespace tcrcli {

struct SuiteOptions {
  long upto = 6;
  int jobs = 1;
};

// every check of the verification suite for one fixture, sorted by id
std::vector<tcr::Check> run_suite(const tcr::Fixture& fx, const SuiteOptions& opt);

}  // namespace tcrcli
