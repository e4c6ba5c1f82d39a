#pragma once

#include "sharpconst/io.hpp"
#include "sharpconst/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace sharpconst::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNonConvergence = 2, kVerifyFailed = 3 };

struct CliConfig {
  std::string subcommand;
  int n = 1;
  int k = 0;
  std::string p_token = "2";
  double p = 2.0;
  std::optional<double> a;
  int grid = 101;
  std::string format;
  std::string out;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::vector<double> nu;
  std::vector<int> only;
};

/// Raised for invalid flag values; the message starts with the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string default_format(const std::string& sub) {
  if (sub == "profile" || sub == "envelope") return "csv";
  if (sub == "verify") return "table";
  return "json";
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

// Post-parse validation of the flags a subcommand uses.
inline void validate(CliConfig& c) {
  try {
    c.p = parse_exponent(c.p_token);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--p: ") + e.what());
  }
  if (c.format.empty()) c.format = default_format(c.subcommand);
  const bool needs_nk = c.subcommand == "profile" || c.subcommand == "lambda" || c.subcommand == "kernel";
  if (needs_nk || c.subcommand == "envelope") {
    require(c.n >= 1 && c.n <= kMaxOrder, "--n: n must satisfy 1 <= n <= " + std::to_string(kMaxOrder));
  }
  if (needs_nk) require(c.k >= 0 && c.k <= c.n - 1, "--k: k must satisfy 0 <= k <= n-1");
  if (c.subcommand == "profile") require(c.grid >= 3, "--grid: grid must be >= 3");
  require(c.jobs >= 1, "--jobs: jobs must be >= 1");
  if (c.a) require(*c.a > 0.0 && *c.a < 1.0, "--a: a must lie in (0;1)");
  if (c.subcommand == "kernel") {
    if (c.nu.empty()) c.nu.assign(static_cast<std::size_t>(c.n), 0.0);
    require(static_cast<int>(c.nu.size()) == c.n, "--nu: expected exactly n = " + std::to_string(c.n) + " values");
  }
  const std::string& f = c.format;
  if (c.subcommand == "kernel" || c.subcommand == "lambda") {
    require(f == "json", "--format: " + c.subcommand + " supports json only");
  } else if (c.subcommand == "verify") {
    require(f == "table" || f == "json" || f == "csv", "--format: expected table, csv or json");
  } else {
    require(f == "csv" || f == "json", "--format: expected csv or json");
  }
}

inline std::string render_verify(const std::vector<CriterionResult>& results, const CliConfig& c) {
  if (c.format == "json") return acceptance_json(results, c.seed).dump(2) + "\n";
  std::string out;
  if (c.format == "csv") {
    out = "id,title,result,seconds\n";
    for (const auto& r : results) {
      out += std::to_string(r.id) + ',' + r.title + ',' + (r.passed ? "pass" : "fail") + ',' + format_number(r.seconds) + '\n';
    }
    return out;
  }
  for (const auto& r : results) {
    out += summary_line(r) + '\n';
    for (const auto& d : r.details) out += "      " + d + '\n';
  }
  return out;
}

}  // namespace detail

/// Executes a validated configuration, writing the document to `out`.
inline int run(CliConfig c, std::ostream& out, std::ostream& err) {
  std::string doc;
  int code = kOk;
  const ApproxOptions opts = ApproxOptions::defaults();
  if (c.subcommand == "profile") {
    const auto rows = A_profile(c.n, c.k, c.p, c.grid, c.jobs, opts);
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        err << "a = " << format_number(r.a) << ": " << r.error << '\n';
        code = kNonConvergence;
      }
    }
    doc = c.format == "csv" ? profile_csv(rows) : profile_json(c.n, c.k, c.p, rows).dump(2) + "\n";
  } else if (c.subcommand == "lambda") {
    const LambdaResult r = lambda_constant(c.n, c.k, c.p, c.jobs, opts);
    if (r.disagreement) {
      err << "warning: optimized value " << format_number(r.optimized) << " disagrees with the closed form\n";
    }
    doc = lambda_json(c.n, c.k, c.p, r).dump(2) + "\n";
  } else if (c.subcommand == "envelope") {
    const auto pts = envelope_points(c.n);
    doc = c.format == "csv" ? envelope_csv(pts) : envelope_json(c.n, pts).dump(2) + "\n";
  } else if (c.subcommand == "kernel") {
    const ProblemSpec spec{c.n, c.k, c.p, c.a.value_or(0.5)};
    doc = kernel_json(spec, NuVector<double>{c.nu}).dump(2) + "\n";
  } else if (c.subcommand == "verify") {
    VerifyOptions vo;
    vo.seed = c.seed;
    vo.jobs = c.jobs;
    vo.only = c.only;
    const auto results = run_acceptance(vo, [&](const CriterionResult& r) { err << summary_line(r) << '\n'; });
    for (const auto& r : results) {
      if (!r.passed) code = kVerifyFailed;
    }
    doc = detail::render_verify(results, c);
  } else {
    throw UsageError("missing subcommand");
  }
  if (c.out.empty() || c.out == "-") {
    out << doc;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw UsageError("--out: cannot open '" + c.out + "' for writing");
    f << doc;
  }
  return code;
}

/// Parses argv-style arguments (without the program name) and runs the command.
inline int main(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CliConfig c;
  CLI::App app{"Sharp pointwise and embedding constants for Sobolev spaces on [0;1]", "sharpconst"};
  app.require_subcommand(1);
  auto add_nk = [&](CLI::App* s) {
    s->add_option("--n", c.n, "order of the highest derivative")->required();
    s->add_option("--k", c.k, "order of the bounded derivative, 0 <= k <= n-1")->required();
  };
  auto add_common = [&](CLI::App* s) {
    s->add_option("--p", c.p_token, "exponent: 1, 2, inf, or a decimal > 1");
    s->add_option("--format", c.format, "csv or json");
    s->add_option("--out", c.out, "output path (default stdout)");
    s->add_option("--jobs", c.jobs, "worker threads");
  };
  CLI::App* profile = app.add_subcommand("profile", "sample A(a) on an even grid");
  add_nk(profile);
  add_common(profile);
  profile->add_option("--grid", c.grid, "number of interior sample points (>= 3)");
  CLI::App* lambda = app.add_subcommand("lambda", "maximize A over a");
  add_nk(lambda);
  add_common(lambda);
  CLI::App* envelope = app.add_subcommand("envelope", "local maximum points and envelope values for k = n-1, p = inf");
  envelope->add_option("--n", c.n, "order")->required();
  envelope->add_option("--format", c.format, "csv or json");
  envelope->add_option("--out", c.out, "output path (default stdout)");
  CLI::App* kernel = app.add_subcommand("kernel", "dump g, g^(n), S and Q^(n) as piecewise polynomials");
  add_nk(kernel);
  add_common(kernel);
  kernel->add_option("--a", c.a, "knot location in (0;1), default 0.5");
  kernel->add_option("--nu", c.nu, "comma-separated nu_0..nu_{n-1}, default zeros")->delimiter(',');
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--seed", c.seed, "seed for the randomized cases");
  verify->add_option("--jobs", c.jobs, "worker threads");
  verify->add_option("--format", c.format, "table, csv or json");
  verify->add_option("--out", c.out, "output path (default stdout)");
  verify->add_option("--only", c.only, "comma-separated criterion ids")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  for (CLI::App* s : app.get_subcommands()) c.subcommand = s->get_name();
  try {
    detail::validate(c);
    return run(std::move(c), out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonConvergenceError& e) {
    err << "solver did not converge: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const SolverQualityError& e) {
    err << "solver did not converge: " << e.what() << '\n';
    return kNonConvergence;
  }
}

}  // namespace sharpconst::cli
