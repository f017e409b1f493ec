#pragma once

#include <string>

#include "almfast/aifal.hpp"
#include "almfast/ifal.hpp"

namespace almfast {

/// Report serialization. JSON carries the full report including any
/// retained iterates; CSV carries the per-iteration trace with columns
/// k,tau,mu,delta,feas,obj,inner_iters,inner_projs,cum_projs (the
/// adaptive trace prepends a rho column). CSV follows RFC 4180 (CRLF
/// line endings); doubles are rendered in shortest round-trip decimal.
std::string solve_report_to_json(const SolveReport& report);
SolveReport solve_report_from_json(const std::string& text);
std::string solve_report_to_csv(const SolveReport& report);

std::string adaptive_report_to_json(const AdaptiveReport& report);
AdaptiveReport adaptive_report_from_json(const std::string& text);
std::string adaptive_report_to_csv(const AdaptiveReport& report);

/// Peeks at the "algorithm" field of a report file.
std::string report_algorithm(const std::string& text);

void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

}  // namespace almfast
