#pragma once

// Named example cases.  Each case carries its presentations, maps and
// expected verdicts as data and recomputes every verdict through the public
// library operations; a report lists expected against computed evidence.

#include <cstdint>
#include <string>
#include <vector>

#include "ddsurf/json_io.hpp"

namespace ddsurf::examples {

enum class Outcome { pass, fail, out_of_scope };

std::string to_string(Outcome o);

struct Check {
  std::string name;
  io::json expected;
  io::json computed;
  bool ok = false;
};

struct Report {
  std::string name;
  Outcome outcome = Outcome::fail;
  std::string summary;
  std::vector<Check> checks;
};

struct Options {
  std::uint64_t seed = 20240601;
  int roundtrip_instances = 8;
};

/// remark-i, remark-ii, remark-iii, remark-iv, remark-v, lemma-sweeps,
/// theorem-roundtrip.
const std::vector<std::string>& names();

/// Throws InputError for an unknown name.
Report run_example(const std::string& name, const Options& options = {});

io::json to_json(const Report& r);

}  // namespace ddsurf::examples
