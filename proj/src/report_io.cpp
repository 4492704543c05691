#include "tbell/report_io.hpp"

#include "tbell/entropy.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace tbell {

namespace {

using nlohmann::json;

void append_report_json(std::string& out, const InequalityReport& r,
                        const std::string& indent) {
  const std::string pad = indent + "  ";
  out += indent + "{\n";
  out += pad + "\"n\": " + std::to_string(r.n) + ",\n";
  out += pad + "\"L\": " + std::to_string(r.L) + ",\n";
  out += pad + "\"policy\": \"" + r.policy + "\",\n";
  out += pad + "\"information_target\": " + format_number(r.information_target) + ",\n";
  out += pad + "\"per_step\": [";
  if (r.per_step.size() <= kMaxPerStepEmitted) {
    for (std::size_t i = 0; i < r.per_step.size(); ++i) {
      if (i) out += ", ";
      out += format_number(r.per_step[i]);
    }
  }
  out += "],\n";
  out += pad + "\"rhs_sum\": " + format_number(r.rhs_sum) + ",\n";
  out += pad + "\"violated\": " + (r.violated ? std::string("true") : std::string("false")) + ",\n";
  out += pad + "\"margin\": " + format_number(r.margin) + ",\n";
  out += pad + "\"paper_bound\": " +
         (r.paper_bound ? format_number(*r.paper_bound) : std::string("null")) + ",\n";
  out += pad + "\"success_probability\": " + format_number(r.success_probability);
  if (r.full_joint_entropy) {
    out += ",\n" + pad + "\"full_joint_entropy\": " + format_number(*r.full_joint_entropy);
  }
  out += "\n" + indent + "}";
}

InequalityReport report_from_json_value(const json& j) {
  InequalityReport r;
  r.n = j.at("n").get<int>();
  r.L = j.at("L").get<std::uint64_t>();
  r.policy = j.at("policy").get<std::string>();
  r.information_target = j.at("information_target").get<double>();
  for (const auto& v : j.at("per_step")) {
    r.per_step.push_back(v.get<double>());
  }
  r.rhs_sum = j.at("rhs_sum").get<double>();
  r.violated = j.at("violated").get<bool>();
  r.margin = j.at("margin").get<double>();
  if (j.contains("paper_bound") && !j.at("paper_bound").is_null()) {
    r.paper_bound = j.at("paper_bound").get<double>();
  }
  r.success_probability = j.at("success_probability").get<double>();
  if (j.contains("full_joint_entropy") && !j.at("full_joint_entropy").is_null()) {
    r.full_joint_entropy = j.at("full_joint_entropy").get<double>();
  }
  return r;
}

void append_report_csv_row(std::string& out, const InequalityReport& r,
                           std::uint64_t per_step_columns, bool fje_column) {
  out += std::to_string(r.n);
  out += ',' + std::to_string(r.L);
  out += ',' + r.policy;
  out += ',' + format_number(r.rhs_sum);
  out += ',' + format_number(r.information_target);
  out += r.violated ? ",true" : ",false";
  out += ',' + format_number(r.margin);
  out += ',';
  if (r.paper_bound) out += format_number(*r.paper_bound);
  out += ',' + format_number(r.success_probability);
  if (fje_column) {
    out += ',';
    if (r.full_joint_entropy) out += format_number(*r.full_joint_entropy);
  }
  const bool emit = r.per_step.size() <= kMaxPerStepEmitted;
  for (std::uint64_t i = 0; i < per_step_columns; ++i) {
    out += ',';
    if (emit && i < r.per_step.size()) out += format_number(r.per_step[i]);
  }
  out += '\n';
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string variant_name(Variant v) {
  return v == Variant::standard ? "standard" : "halt-on-hit";
}

std::string source_name(PairSource s) {
  return s == PairSource::exact_branch ? "exact_branch" : "sampled";
}

Variant parse_variant(const std::string& name) {
  if (name == "standard") return Variant::standard;
  if (name == "halt-on-hit" || name == "halt_on_hit") return Variant::halt_on_hit;
  throw std::invalid_argument("unknown variant: " + name);
}

PairSource parse_source(const std::string& name) {
  if (name == "exact_branch") return PairSource::exact_branch;
  if (name == "sampled") return PairSource::sampled;
  throw std::invalid_argument("unknown pair source: " + name);
}

std::string to_json(const InequalityReport& report) {
  std::string out;
  append_report_json(out, report, "");
  out += '\n';
  return out;
}

std::string to_json(std::span<const InequalityReport> reports) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    append_report_json(out, reports[i], "  ");
    if (i + 1 < reports.size()) out += ',';
    out += '\n';
  }
  out += "]\n";
  return out;
}

std::string to_json(const PairDistribution& pd) {
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(pd.n) + ",\n";
  out += "  \"k\": " + std::to_string(pd.k) + ",\n";
  out += "  \"variant\": \"" + variant_name(pd.variant) + "\",\n";
  out += "  \"source\": \"" + source_name(pd.source) + "\",\n";
  out += "  \"joint\": [[" + format_number(pd.joint(0, 0)) + ", " +
         format_number(pd.joint(0, 1)) + "], [" + format_number(pd.joint(1, 0)) +
         ", " + format_number(pd.joint(1, 1)) + "]],\n";
  out += "  \"conditional_entropy\": " +
         format_number(conditional_entropy(pd.joint));
  if (pd.source == PairSource::sampled) {
    out += ",\n  \"samples\": " + std::to_string(pd.samples);
    out += ",\n  \"stderr_bits\": " +
           (pd.stderr_bits ? format_number(*pd.stderr_bits) : std::string("null"));
    out += ",\n  \"stderr_reliable\": " +
           (pd.stderr_reliable ? std::string("true") : std::string("false"));
  }
  out += "\n}\n";
  return out;
}

std::string to_csv(std::span<const InequalityReport> reports, bool fje_column) {
  std::uint64_t per_step_columns = 0;
  for (const auto& r : reports) {
    if (r.per_step.size() <= kMaxPerStepEmitted) {
      per_step_columns = std::max<std::uint64_t>(per_step_columns, r.per_step.size());
    }
  }
  std::string out =
      "n,L,policy,rhs_sum,information_target,violated,margin,paper_bound,"
      "success_probability";
  if (fje_column) out += ",full_joint_entropy";
  for (std::uint64_t i = 0; i < per_step_columns; ++i) {
    out += ",per_step_" + std::to_string(i);
  }
  out += '\n';
  for (const auto& r : reports) {
    append_report_csv_row(out, r, per_step_columns, fje_column);
  }
  return out;
}

std::string to_csv(const PairDistribution& pd) {
  std::string out =
      "n,k,variant,source,samples,p_00,p_01,p_10,p_11,conditional_entropy,"
      "stderr_bits,stderr_reliable\n";
  out += std::to_string(pd.n);
  out += ',' + std::to_string(pd.k);
  out += ',' + variant_name(pd.variant);
  out += ',' + source_name(pd.source);
  out += ',';
  if (pd.source == PairSource::sampled) out += std::to_string(pd.samples);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out += ',' + format_number(pd.joint(a, b));
    }
  }
  out += ',' + format_number(conditional_entropy(pd.joint));
  out += ',';
  if (pd.stderr_bits) out += format_number(*pd.stderr_bits);
  out += ',';
  if (pd.source == PairSource::sampled) {
    out += pd.stderr_reliable ? "true" : "false";
  }
  out += '\n';
  return out;
}

InequalityReport inequality_report_from_json(const std::string& text) {
  return report_from_json_value(json::parse(text));
}

std::vector<InequalityReport> inequality_reports_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_array()) {
    throw std::invalid_argument("expected a top-level JSON array of reports");
  }
  std::vector<InequalityReport> reports;
  reports.reserve(j.size());
  for (const auto& item : j) {
    reports.push_back(report_from_json_value(item));
  }
  return reports;
}

PairDistribution pair_distribution_from_json(const std::string& text) {
  const json j = json::parse(text);
  PairDistribution pd;
  pd.n = j.at("n").get<int>();
  pd.k = j.at("k").get<int>();
  pd.variant = parse_variant(j.at("variant").get<std::string>());
  pd.source = parse_source(j.at("source").get<std::string>());
  const auto& rows = j.at("joint");
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      pd.joint(a, b) = rows.at(a).at(b).get<double>();
    }
  }
  if (j.contains("samples")) pd.samples = j.at("samples").get<std::uint64_t>();
  if (j.contains("stderr_bits") && !j.at("stderr_bits").is_null()) {
    pd.stderr_bits = j.at("stderr_bits").get<double>();
  }
  if (j.contains("stderr_reliable")) {
    pd.stderr_reliable = j.at("stderr_reliable").get<bool>();
  }
  return pd;
}

QuerySchedule parse_schedule(std::istream& in) {
  QuerySchedule schedule;
  std::string line;
  int line_number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    // Trim surrounding whitespace.
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);

    if (!have_header) {
      if (token.rfind("n=", 0) != 0) {
        throw ScheduleParseError(line_number, "expected header n=<int>");
      }
      try {
        std::size_t used = 0;
        schedule.n = std::stoi(token.substr(2), &used);
        if (used != token.size() - 2) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ScheduleParseError(line_number, "malformed header: " + token);
      }
      if (schedule.n < 1 || schedule.n > 20) {
        throw ScheduleParseError(line_number, "n must be in [1, 20]");
      }
      have_header = true;
      continue;
    }

    std::uint64_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoull(token, &used);
      if (used != token.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ScheduleParseError(line_number, "malformed query input: " + token);
    }
    if (value >= (std::uint64_t(1) << schedule.n)) {
      throw ScheduleParseError(line_number, "query input " + token +
                                                " out of range for n=" +
                                                std::to_string(schedule.n));
    }
    schedule.inputs.push_back(value);
  }
  if (!have_header) {
    throw ScheduleParseError(line_number == 0 ? 1 : line_number,
                             "missing header n=<int>");
  }
  if (schedule.inputs.empty()) {
    throw ScheduleParseError(line_number, "schedule contains no queries");
  }
  return schedule;
}

QuerySchedule parse_schedule_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open schedule file: " + path.string());
  }
  return parse_schedule(in);
}

std::string schedule_to_text(const QuerySchedule& schedule) {
  schedule.validate();
  std::string out = "n=" + std::to_string(schedule.n) + "\n";
  for (std::uint64_t x : schedule.inputs) {
    out += std::to_string(x) + "\n";
  }
  return out;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("failed to move report into place: " + ec.message());
  }
}

}  // namespace tbell
