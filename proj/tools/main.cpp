// ecslab: batch verification of the Roter metric family -- curvature
// identities, parallel Weyl tensor, and the rank invariant d.
//
// Exit codes: 0 all checks passed (warnings allowed), 1 parse or
// validation error, 2 any invariant or rank check failed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ecslab/report.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ecslab::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string config_path;
  std::string report_path;
  std::string points_path;
  bool quiet = false;
};

std::vector<ecslab::CaseConfig> load_cases(const Options& opt) {
  auto cases = ecslab::parse_config(slurp(opt.config_path));
  if (!opt.points_path.empty()) {
    const ecslab::Json pj = ecslab::Json::parse(slurp(opt.points_path));
    const ecslab::Json& arr =
        pj.is_object() && pj.contains("points") ? pj["points"] : pj;
    for (auto& c : cases)
      c.sample_points =
          ecslab::parse_points(arr, c.n, "points file (case '" + c.id + "')");
  }
  return cases;
}

void emit(const Options& opt, const ecslab::Json& j,
          const std::vector<ecslab::VerificationReport>& reps) {
  const std::string text = ecslab::render_report(j);
  if (!opt.report_path.empty()) {
    std::ofstream out(opt.report_path, std::ios::binary);
    out << text;
  } else if (!opt.quiet) {
    std::cout << text;
  }
  if (!opt.quiet)
    for (const auto& r : reps)
      std::cerr << r.case_id << ": " << to_string(r.overall())
                << (r.has_warnings() ? " (with warnings)" : "") << "\n";
}

int exit_code(const std::vector<ecslab::VerificationReport>& reps) {
  for (const auto& r : reps)
    if (r.overall() == ecslab::CheckStatus::Fail) {
      // a pure validation failure is a usage error, not an invariant fail
      bool only_validation = true;
      for (const auto& e : r.checks.entries)
        if (e.status == ecslab::CheckStatus::Fail &&
            e.name.rfind("validate: ", 0) != 0)
          only_validation = false;
      return only_validation ? 1 : 2;
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification lab for Roter metrics (parallel Weyl "
               "tensor, Olszak rank)"};
  app.require_subcommand(1);

  Options opt;
  for (auto* sub : {app.add_subcommand("validate", "parameter constraints only"),
                    app.add_subcommand("verify", "curvature identity suite"),
                    app.add_subcommand("rank", "Olszak rank dichotomy"),
                    app.add_subcommand("sweep", "verify + rank for all cases")}) {
    sub->add_option("-c,--config", opt.config_path, "config file (JSON)")
        ->required();
    sub->add_option("--report", opt.report_path, "write report to file");
    sub->add_option("--points", opt.points_path,
                    "sample points file overriding the config");
    sub->add_flag("--quiet", opt.quiet, "suppress stdout/stderr chatter");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    const auto cases = load_cases(opt);
    std::vector<ecslab::VerificationReport> reps;

    if (cmd == "validate") {
      for (const auto& c : cases) {
        ecslab::VerificationReport rep;
        rep.case_id = c.id;
        rep.config = c;
        for (auto& e : ecslab::validate(ecslab::to_params(c)).entries)
          rep.checks.add("validate: " + e.name, e.status, e.detail);
        reps.push_back(std::move(rep));
      }
    } else if (cmd == "verify") {
      for (const auto& c : cases) reps.push_back(ecslab::run_verify(c));
    } else if (cmd == "rank") {
      for (const auto& c : cases) reps.push_back(ecslab::run_rank(c));
    } else {
      reps = ecslab::run_sweep(cases);
    }

    emit(opt, ecslab::aggregate_to_json(reps), reps);
    return exit_code(reps);
  } catch (const ecslab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
