#pragma once

// Report serialization (JSON and CSV) and the schedule file format.
//
// Numbers are serialized with 12 significant digits ("%.12g"), identically
// in both formats, and emission is deterministic, so identical runs produce
// byte-identical files. Parsing uses nlohmann/json; parse(serialize(x))
// reproduces the canonical (12-digit-rounded) form exactly.

#include "tbell/classical.hpp"
#include "tbell/experiment.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbell {

// per_step arrays/columns are emitted only up to this length; longer rows
// would produce thousands of columns (classical n=12 has L=4096).
inline constexpr std::uint64_t kMaxPerStepEmitted = 256;

// "%.12g"
std::string format_number(double x);

std::string variant_name(Variant v);
std::string source_name(PairSource s);
Variant parse_variant(const std::string& name);
PairSource parse_source(const std::string& name);

std::string to_json(const InequalityReport& report);
std::string to_json(std::span<const InequalityReport> reports);  // top-level array
std::string to_json(const PairDistribution& pd);

// Sweep/quantum CSV schema:
//   n,L,policy,rhs_sum,information_target,violated,margin,paper_bound,
//   success_probability,per_step_0,...   (ragged tail padded empty)
// Classical single-report payloads add a full_joint_entropy column after
// success_probability.
std::string to_csv(std::span<const InequalityReport> reports,
                   bool full_joint_entropy_column = false);
std::string to_csv(const PairDistribution& pd);

InequalityReport inequality_report_from_json(const std::string& text);
std::vector<InequalityReport> inequality_reports_from_json(const std::string& text);
PairDistribution pair_distribution_from_json(const std::string& text);

class ScheduleParseError : public std::runtime_error {
 public:
  ScheduleParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Plain text, header `n=<int>`, then one input per line. Blank lines are
// ignored. Throws ScheduleParseError with the offending line number.
QuerySchedule parse_schedule(std::istream& in);
QuerySchedule parse_schedule_file(const std::filesystem::path& path);
std::string schedule_to_text(const QuerySchedule& schedule);

// Writes to a temporary sibling then renames, so a failed run never leaves
// a partial report behind.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace tbell
