#include "tbell/cli.hpp"

#include "tbell/classical.hpp"
#include "tbell/entropy.hpp"
#include "tbell/experiment.hpp"
#include "tbell/report_io.hpp"
#include "tbell/validate.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <span>

namespace tbell {

namespace {

void emit_payload(const std::string& payload, const std::string& output) {
  if (output.empty()) {
    std::cout << payload;
  } else {
    atomic_write_file(output, payload);
  }
}

void print_report_summary(const InequalityReport& r, std::uint64_t oracle_calls) {
  std::cout << "n=" << r.n << " L=" << r.L << " (oracle calls: " << oracle_calls
            << ") policy=" << r.policy << "\n";
  std::cout << "rhs_sum=" << format_number(r.rhs_sum)
            << " information_target=" << format_number(r.information_target)
            << " violated=" << (r.violated ? "true" : "false")
            << " margin=" << format_number(r.margin) << "\n";
  if (r.paper_bound) {
    std::cout << "paper_bound=" << format_number(*r.paper_bound) << " ";
  }
  std::cout << "success_probability=" << format_number(r.success_probability);
  if (r.full_joint_entropy) {
    std::cout << " full_joint_entropy=" << format_number(*r.full_joint_entropy);
  }
  std::cout << "\n";
}

struct QuantumArgs {
  ExperimentConfig config;
  int k = -1;
  std::string mode = "exact";
  std::string variant = "standard";
  std::string output;
  std::string format = "json";
};

struct ClassicalArgs {
  int n = 0;
  std::string schedule_path;
  std::string output;
  std::string format = "json";
};

struct CheckArgs {
  int n = 0;
  std::uint64_t L = 0;
};

struct SweepArgs {
  std::string range = "3..12";
  std::string policy = "ceil-sqrt";
  bool classical_baseline = true;
  std::string output;
  std::string format = "csv";
};

struct ValidateArgs {
  int n_max = 10;
  std::uint64_t seed = 1;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed range '" + text +
                                "': expected <int> or <int>..<int>");
  }
}

int cmd_run_quantum(QuantumArgs& args) {
  args.config.mode = args.mode == "exact" ? Mode::exact : Mode::monte_carlo;
  args.config.variant = parse_variant(args.variant);
  args.config.validate();

  std::string payload;
  if (args.k >= 0) {
    const PairDistribution pd =
        args.config.mode == Mode::exact
            ? exact_pair_distribution(args.config.n, args.k, args.config.variant)
            : sample_pairs(args.config, args.k);
    payload = args.format == "json" ? to_json(pd) : to_csv(pd);
    if (!args.output.empty()) {
      std::cout << "pair (A_" << args.k << ", A_" << args.k + 1 << ") at n="
                << args.config.n << ": H(A_" << args.k + 1 << "|A_" << args.k
                << ") = " << format_number(conditional_entropy(pd.joint)) << "\n";
    }
  } else {
    const InequalityReport report = make_quantum_report(args.config);
    const std::vector<InequalityReport> one{report};
    payload = args.format == "json" ? to_json(report)
                                    : to_csv(std::span(one.data(), one.size()));
    if (!args.output.empty()) {
      print_report_summary(report, 2 * report.L);
    }
  }
  emit_payload(payload, args.output);
  if (!args.output.empty()) {
    std::cout << "wrote " << args.output << "\n";
  }
  return 0;
}

int cmd_run_classical(ClassicalArgs& args) {
  QuerySchedule schedule;
  if (!args.schedule_path.empty()) {
    schedule = parse_schedule_file(args.schedule_path);
    if (schedule.n != args.n) {
      throw std::invalid_argument(
          "schedule file declares n=" + std::to_string(schedule.n) +
          " but --n " + std::to_string(args.n) + " was given");
    }
  } else {
    schedule = sequential_schedule(args.n);
  }
  const InequalityReport report = make_classical_report(schedule);
  const std::vector<InequalityReport> one{report};
  const std::string payload =
      args.format == "json"
          ? to_json(report)
          : to_csv(std::span(one.data(), one.size()), /*fje_column=*/true);
  if (!args.output.empty()) {
    print_report_summary(report, report.L);  // one oracle call per query
  }
  emit_payload(payload, args.output);
  if (!args.output.empty()) {
    std::cout << "wrote " << args.output << "\n";
  }
  return 0;
}

int cmd_check(const CheckArgs& args) {
  ExperimentConfig cfg;
  cfg.n = args.n;
  cfg.L = args.L;
  cfg.validate();
  const std::uint64_t L = cfg.iterations();
  const double rhs = quantum_rhs_sum(args.n, L);
  const Verdict verdict = check_violation(double(args.n), rhs);
  std::cout << "n=" << args.n << " L=" << L << " (oracle calls: " << 2 * L
            << ") policy=" << (args.L == 0 ? "ceil-sqrt" : "fixed-L") << "\n";
  std::cout << "quantum rhs_sum = " << format_number(rhs) << " -> "
            << (verdict.violated ? "violated" : "not violated") << " (margin "
            << format_number(verdict.margin) << ")\n";

  const double real_L = std::sqrt(std::ldexp(1.0, args.n));
  const double rhs_real = quantum_rhs_sum_real(args.n, real_L);
  const double bound = paper_bound(args.n);
  std::cout << "analytic rhs at real L=sqrt(2^n) = " << format_number(rhs_real)
            << ", bound = " << format_number(bound)
            << ", rhs < bound: " << (rhs_real < bound ? "yes" : "no") << "\n";

  if (args.n <= 12) {
    const QuerySchedule schedule = sequential_schedule(args.n);
    const double classical = classical_rhs_sum(schedule);
    std::cout << "classical sequential rhs = " << format_number(classical)
              << " (L=" << schedule.length()
              << ", oracle calls: " << schedule.length() << "), rhs >= n: "
              << (classical >= double(args.n) - 1e-9 ? "yes" : "no") << "\n";
  } else {
    std::cout << "classical sequential baseline skipped (n > 12)\n";
  }
  std::cout << "success probability of " << L
            << " unmeasured iterations = "
            << format_number(closed_form_success_probability(args.n, L)) << "\n";
  return 0;
}

int cmd_sweep(const SweepArgs& args) {
  const auto [n_min, n_max] = parse_range(args.range);
  SweepOptions options;
  options.n_min = n_min;
  options.n_max = n_max;
  options.policy = args.policy == "ceil-sqrt" ? SweepPolicy::ceil_sqrt
                                              : SweepPolicy::grover_optimal;
  options.classical_baseline = args.classical_baseline;
  const std::vector<InequalityReport> reports = sweep(options);
  const std::string payload =
      args.format == "json" ? to_json(std::span(reports.data(), reports.size()))
                            : to_csv(std::span(reports.data(), reports.size()));
  if (!args.output.empty()) {
    for (const auto& r : reports) {
      std::cout << "n=" << r.n << " policy=" << r.policy << " L=" << r.L
                << " rhs_sum=" << format_number(r.rhs_sum) << " violated="
                << (r.violated ? "true" : "false") << "\n";
    }
  }
  emit_payload(payload, args.output);
  if (!args.output.empty()) {
    std::cout << "wrote " << args.output << "\n";
  }
  return 0;
}

int cmd_validate(const ValidateArgs& args) {
  ValidateOptions options;
  options.n_max = args.n_max;
  options.seed = args.seed;
  const std::vector<CheckResult> results = run_validation(options);
  bool all_passed = true;
  for (const auto& r : results) {
    if (r.passed) {
      std::printf("[ ok ] %-24s (%llu cases)\n", r.name.c_str(),
                  static_cast<unsigned long long>(r.cases));
    } else {
      all_passed = false;
      std::printf("[FAIL] %-24s %s\n", r.name.c_str(), r.detail.c_str());
    }
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Temporal Bell inequality laboratory for oracle search"};
  app.require_subcommand(1);

  QuantumArgs quantum;
  auto* run_quantum = app.add_subcommand(
      "run-quantum", "Grover run with mid-circuit output measurements");
  run_quantum->add_option("--n", quantum.config.n, "problem size in bits [3, 60]")
      ->required();
  run_quantum->add_option("--L", quantum.config.L,
                          "iteration budget (default ceil(sqrt(2^n)))");
  run_quantum->add_option("--k", quantum.k,
                          "emit only the (A_k, A_k+1) pair distribution");
  run_quantum->add_option("--mode", quantum.mode, "exact | monte-carlo")
      ->check(CLI::IsMember({"exact", "monte-carlo"}));
  run_quantum->add_option("--samples", quantum.config.samples,
                          "Monte-Carlo copies per pair");
  run_quantum->add_option("--seed", quantum.config.seed, "sampling seed")
      ->envname("TBL_SEED");
  run_quantum->add_option("--variant", quantum.variant, "standard | halt-on-hit")
      ->check(CLI::IsMember({"standard", "halt-on-hit"}));
  run_quantum->add_option("--output", quantum.output, "report file (default stdout)");
  run_quantum->add_option("--format", quantum.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  ClassicalArgs classical;
  auto* run_classical = app.add_subcommand(
      "run-classical", "deterministic query schedule under the uniform prior");
  run_classical->add_option("--n", classical.n, "problem size in bits [1, 14]")
      ->required();
  run_classical->add_option("--schedule", classical.schedule_path,
                            "schedule file (default: sequential scan)");
  run_classical->add_option("--output", classical.output,
                            "report file (default stdout)");
  run_classical->add_option("--format", classical.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CheckArgs check;
  auto* check_cmd = app.add_subcommand(
      "check", "one-shot inequality check for a single n (stdout only)");
  check_cmd->add_option("--n", check.n, "problem size in bits [3, 60]")->required();
  check_cmd->add_option("--L", check.L, "iteration budget (default ceil(sqrt(2^n)))");

  SweepArgs sweep_args;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "violation table over a range of n");
  sweep_cmd->add_option("--n", sweep_args.range, "range, e.g. 3..12");
  sweep_cmd->add_option("--policy", sweep_args.policy,
                        "ceil-sqrt | grover-optimal")
      ->check(CLI::IsMember({"ceil-sqrt", "grover-optimal"}));
  sweep_cmd->add_flag("--classical-baseline,!--no-classical-baseline",
                      sweep_args.classical_baseline,
                      "include sequential-schedule rows for n <= 12");
  sweep_cmd->add_option("--output", sweep_args.output, "report file (default stdout)");
  sweep_cmd->add_option("--format", sweep_args.format, "csv | json")
      ->check(CLI::IsMember({"json", "csv"}));

  ValidateArgs validate_args;
  auto* validate_cmd =
      app.add_subcommand("validate", "run the invariant suites");
  validate_cmd->add_option("--n-max", validate_args.n_max,
                           "largest n for engine-backed suites (<= 12)")
      ->check(CLI::Range(3, 12));
  validate_cmd->add_option("--seed", validate_args.seed,
                           "seed for the randomized suites")
      ->envname("TBL_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*run_quantum) return cmd_run_quantum(quantum);
    if (*run_classical) return cmd_run_classical(classical);
    if (*check_cmd) return cmd_check(check);
    if (*sweep_cmd) return cmd_sweep(sweep_args);
    if (*validate_cmd) return cmd_validate(validate_args);
  } catch (const ScheduleParseError& e) {
    std::cerr << "error: schedule file: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("tbell");
  for (const auto& arg : args) {
    argv.push_back(arg.c_str());
  }
  return run_cli(int(argv.size()), argv.data());
}

}  // namespace tbell
