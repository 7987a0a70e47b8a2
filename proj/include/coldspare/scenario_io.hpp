#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coldspare/allocation.hpp"
#include "coldspare/types.hpp"

namespace coldspare {

/// A scenario plus the optional pre-assigned spare storage from the same file.
struct LoadedScenario {
  TeamScenario scenario;
  std::optional<RedundancyMap> storage;
};

/// Parse and validate a scenario from JSON text or a JSON file. Unknown keys
/// are rejected at every level. Throws ConfigError on malformed input,
/// DomainError on out-of-domain numbers.
LoadedScenario load_scenario_text(const std::string& json_text);
LoadedScenario load_scenario_file(const std::string& path);

/// Parse a gene vector from "0 3 0 7"-style text (commas allowed between the
/// values) or from a JSON array literal such as "[0,3,0,7]".
Allocation parse_genes(const std::string& text);

/// Fixed 9-decimal rendering used for every real number the tools print.
std::string format_fixed(double value);

/// CSV with the header "reliability,cost,genes"; the genes column holds the
/// space-separated gene vector. Rows keep the order of `front`.
void write_front_csv(std::ostream& out, const std::vector<ParetoPoint>& front);
std::vector<ParetoPoint> read_front_csv(std::istream& in);

}  // namespace coldspare
