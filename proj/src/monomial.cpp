#include "ddsurf/monomial.hpp"

#include <cctype>
#include <set>

#include "ddsurf/field.hpp"

namespace ddsurf {

Variables::Variables(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty() || static_cast<int>(names_.size()) > kMaxVars)
    throw InputError("a ring needs between 1 and " + std::to_string(kMaxVars) + " variables");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
      throw InputError("bad variable name '" + n + "'");
    for (char c : n)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw InputError("bad variable name '" + n + "'");
    if (!seen.insert(n).second) throw InputError("duplicate variable '" + n + "'");
  }
}

int Variables::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

}  // namespace ddsurf
