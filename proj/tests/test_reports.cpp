#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tbell/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>

using namespace tbell;

namespace {

InequalityReport sample_report() {
  ExperimentConfig cfg;
  cfg.n = 4;
  return make_quantum_report(cfg);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("numbers are formatted with 12 significant digits") {
  CHECK(format_number(4.0) == "4");
  CHECK(format_number(2.9375) == "2.9375");
  CHECK(format_number(0.7855602922535472) == "0.785560292254");
  CHECK(format_number(2.6939709433776554) == "2.69397094338");
  CHECK(format_number(1e-30) == "1e-30");
}

TEST_CASE("report JSON round-trips byte-identically") {
  const InequalityReport report = sample_report();
  const std::string text = to_json(report);
  const InequalityReport parsed = inequality_report_from_json(text);
  CHECK(parsed.n == report.n);
  CHECK(parsed.L == report.L);
  CHECK(parsed.policy == report.policy);
  CHECK(parsed.violated == report.violated);
  CHECK(parsed.per_step.size() == report.per_step.size());
  REQUIRE(parsed.paper_bound.has_value());
  // Canonical form: serializing the parsed report reproduces the bytes.
  CHECK(to_json(parsed) == text);
}

TEST_CASE("sweep JSON is a top-level array and round-trips") {
  SweepOptions options;
  options.n_min = 3;
  options.n_max = 5;
  const auto reports = sweep(options);
  const std::string text = to_json(std::span(reports.data(), reports.size()));
  const auto parsed = inequality_reports_from_json(text);
  REQUIRE(parsed.size() == reports.size());
  CHECK(to_json(std::span(parsed.data(), parsed.size())) == text);
}

TEST_CASE("CSV schema") {
  SweepOptions options;
  options.n_min = 3;
  options.n_max = 4;
  const auto reports = sweep(options);
  const std::string csv = to_csv(std::span(reports.data(), reports.size()));

  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("n,L,policy,rhs_sum,information_target,violated,margin,"
                     "paper_bound,success_probability,per_step_0",
                     0) == 0);

  // Classical baseline at n=4 has L=16 steps, so the header is padded to 16
  // per_step columns and shorter rows carry empty tails.
  CHECK(header.find("per_step_15") != std::string::npos);
  std::string row;
  std::getline(lines, row);  // n=3 quantum row, L=3
  CHECK(std::count(row.begin(), row.end(), ',') ==
        std::count(header.begin(), header.end(), ','));

  // CSV and JSON carry the same 12-digit values.
  CHECK(csv.find(format_number(reports[0].rhs_sum)) != std::string::npos);
  const std::string json = to_json(std::span(reports.data(), reports.size()));
  CHECK(json.find(format_number(reports[0].rhs_sum)) != std::string::npos);
}

TEST_CASE("per-step payloads are capped for very long rows") {
  InequalityReport report = sample_report();
  report.per_step.assign(1000, 0.25);
  const std::string json = to_json(report);
  CHECK(json.find("\"per_step\": []") != std::string::npos);
  const std::vector<InequalityReport> one{report};
  const std::string csv = to_csv(std::span(one.data(), one.size()));
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header.find("per_step_0") == std::string::npos);
}

TEST_CASE("classical payloads carry the full joint entropy") {
  const InequalityReport report = make_classical_report(sequential_schedule(3));
  const std::string json = to_json(report);
  CHECK(json.find("\"full_joint_entropy\": 3") != std::string::npos);
  const InequalityReport parsed = inequality_report_from_json(json);
  REQUIRE(parsed.full_joint_entropy.has_value());
  CHECK(to_json(parsed) == json);

  const std::vector<InequalityReport> one{report};
  const std::string csv = to_csv(std::span(one.data(), one.size()), true);
  CHECK(csv.find("full_joint_entropy") != std::string::npos);

  // n < 3 has no analytic bound: null in JSON, empty CSV cell.
  const InequalityReport tiny = make_classical_report(sequential_schedule(1));
  CHECK(!tiny.paper_bound.has_value());
  const std::string tiny_json = to_json(tiny);
  CHECK(tiny_json.find("\"paper_bound\": null") != std::string::npos);
  const InequalityReport tiny_parsed = inequality_report_from_json(tiny_json);
  CHECK(!tiny_parsed.paper_bound.has_value());
}

TEST_CASE("pair distribution serialization round-trips") {
  const PairDistribution exact = exact_pair_distribution(4, 2);
  const std::string json = to_json(exact);
  const PairDistribution parsed = pair_distribution_from_json(json);
  CHECK(parsed.k == 2);
  CHECK(parsed.source == PairSource::exact_branch);
  CHECK(to_json(parsed) == json);
  CHECK(json.find("\"samples\"") == std::string::npos);

  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.mode = Mode::monte_carlo;
  cfg.samples = 5000;
  cfg.seed = 3;
  const PairDistribution sampled = sample_pairs(cfg, 2);
  const std::string sampled_json = to_json(sampled);
  CHECK(sampled_json.find("\"samples\": 5000") != std::string::npos);
  CHECK(sampled_json.find("\"stderr_bits\"") != std::string::npos);
  const PairDistribution sampled_parsed = pair_distribution_from_json(sampled_json);
  CHECK(to_json(sampled_parsed) == sampled_json);

  const std::string csv = to_csv(sampled);
  CHECK(csv.rfind("n,k,variant,source,samples,p_00", 0) == 0);
}

TEST_CASE("schedule files parse and report line numbers") {
  std::istringstream good("n=3\n0\n1\n2\n\n3\n");
  const QuerySchedule schedule = parse_schedule(good);
  CHECK(schedule.n == 3);
  CHECK(schedule.inputs == std::vector<std::uint64_t>({0, 1, 2, 3}));

  // Round trip through the text form.
  std::istringstream again(schedule_to_text(schedule));
  CHECK(parse_schedule(again).inputs == schedule.inputs);

  std::istringstream missing_header("0\n1\n");
  CHECK_THROWS_WITH_AS(parse_schedule(missing_header),
                       "line 1: expected header n=<int>", ScheduleParseError);

  std::istringstream bad_value("n=2\n0\nbanana\n");
  try {
    parse_schedule(bad_value);
    CHECK(false);
  } catch (const ScheduleParseError& e) {
    CHECK(e.line() == 3);
  }

  std::istringstream out_of_range("n=2\n7\n");
  try {
    parse_schedule(out_of_range);
    CHECK(false);
  } catch (const ScheduleParseError& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream bad_n("n=0\n1\n");
  CHECK_THROWS_AS(parse_schedule(bad_n), ScheduleParseError);
  std::istringstream empty("n=2\n\n");
  CHECK_THROWS_AS(parse_schedule(empty), ScheduleParseError);
}

TEST_CASE("atomic writes leave no partial files") {
  const auto dir = std::filesystem::temp_directory_path() / "tbell_report_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "report.json";

  atomic_write_file(path, "payload\n");
  CHECK(slurp(path) == "payload\n");
  CHECK(!std::filesystem::exists(dir / "report.json.tmp"));

  const auto missing = dir / "no_such_dir" / "report.json";
  CHECK_THROWS_AS(atomic_write_file(missing, "x"), std::runtime_error);
  CHECK(!std::filesystem::exists(missing));

  std::filesystem::remove_all(dir);
}

TEST_CASE("variant and source names round-trip") {
  CHECK(parse_variant(variant_name(Variant::halt_on_hit)) == Variant::halt_on_hit);
  CHECK(parse_source(source_name(PairSource::sampled)) == PairSource::sampled);
  CHECK_THROWS_AS(parse_variant("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(parse_source("bogus"), std::invalid_argument);
}
