#pragma once

#include <string>
#include <vector>

#include "ruij/types.hpp"

namespace ruij::test {

// One whitespace-separated record of a reference file; '#' lines are skipped.
std::vector<std::vector<std::string>> read_table(const std::string& name);

double rel_err(cplx a, cplx b);

} // namespace ruij::test
