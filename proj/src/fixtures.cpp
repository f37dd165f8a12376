#include "autorank/fixtures.hpp"

#include <map>

#include "autorank/error.hpp"

namespace autorank {

namespace {

const std::map<std::string, std::string>& table() {
  static const std::map<std::string, std::string> entries = {
#include "fixture_data.inc"
  };
  return entries;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : table()) out.push_back(name);
  return out;
}

const std::string& fixture_text(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end()) {
    std::string known;
    for (const auto& [n, t] : table()) known += (known.empty() ? "" : ", ") + n;
    throw Error("unknown-fixture", "unknown fixture '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

Dfao load_fixture(const std::string& name) { return load_dfao(fixture_text(name)); }

}  // namespace autorank
