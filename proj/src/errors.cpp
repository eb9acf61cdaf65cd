#include "mixedspec/errors.hpp"

#include <sstream>

namespace mixedspec {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::ostringstream os;
  os << "problem validation failed:";
  for (const auto& line : v) os << "\n  - " << line;
  return os.str();
}

std::string join_modes(const std::string& msg, const std::vector<int>& ks) {
  std::ostringstream os;
  os << msg;
  if (!ks.empty()) {
    os << " (k =";
    for (int k : ks) os << ' ' << k;
    os << ')';
  }
  return os.str();
}

}

ValidationFailed::ValidationFailed(std::vector<std::string> v)
    : ConfigError(join_violations(v)), violations(std::move(v)) {}

DegenerateUnsolvable::DegenerateUnsolvable(const std::string& msg, std::vector<int> ks)
    : Error(join_modes(msg, ks)), modes(std::move(ks)) {}

}
