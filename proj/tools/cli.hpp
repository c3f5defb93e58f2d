#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbc/region.hpp"

namespace sbc::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kEvaluationError = 3 };

struct Domain {
    Region region;
    CenterPolicy center;
};

/// Strict DomainFile reader; throws invalid_argument on unknown keys or bad shapes.
Domain parse_domain(const nlohmann::json& doc);
/// "builtin:<name>" or a path to a DomainFile.
Domain load_domain(const std::string& spec);

/// origin | vertex_average | vertex:i | custom:x,y
CenterPolicy parse_center(const std::string& s);

/// Value with 17 significant digits, trailing zeros kept.
std::string format_real(double v);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sbc::cli
