#pragma once

#include <string>
#include <vector>

#include "autorank/dfao.hpp"

namespace autorank {

/// Names of the DFAOs shipped with the library.
std::vector<std::string> fixture_names();
/// Throws Error("unknown-fixture") for names not in fixture_names().
Dfao load_fixture(const std::string& name);
const std::string& fixture_text(const std::string& name);

}  // namespace autorank
