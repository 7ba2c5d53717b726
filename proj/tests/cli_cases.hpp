#pragma once

// Golden-file cases for the command line, shared by the unit tests and the
// acceptance run. Each case compares stdout with golden/<name>.out.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "graphmanifold/cli.hpp"

namespace cli_cases {

struct Run {
  int code;
  std::string out;
  std::string err;
};

inline Run gmtool(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = gm::run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Case {
  std::string name;
  std::vector<std::string> args;  // "@x" expands to the golden file x
  int code;
  bool cycle_input;               // exercises the k-cycle example
};

inline std::vector<Case> all_cases() {
  using namespace gm;
  return {
      {"generate_cycle3", {"generate", "cycle", "--k", "3"}, kExitOk, true},
      {"generate_cycle3_perturbed", {"generate", "cycle", "--k", "3", "--perturbed"}, kExitOk, true},
      {"generate_alternating4", {"generate", "orthogonal", "--alternating", "--k", "4"}, kExitOk, false},
      {"generate_random_seed3", {"--seed", "3", "generate", "random", "--target", "i1j1type2"}, kExitOk, false},
      {"generate_mixed_seed5", {"--seed", "5", "generate", "random", "--target", "mixed_j"}, kExitOk, false},
      {"validate_cycle3", {"validate", "@cycle3.json"}, kExitOk, true},
      {"validate_cycle3_perturbed", {"validate", "@cycle3_perturbed.json", "--format", "text"}, kExitOk, true},
      {"validate_invalid", {"validate", "@invalid_det.json"}, kExitInvalid, false},
      {"validate_invalid_text", {"--format", "text", "validate", "@invalid_det.json"}, kExitInvalid, false},
      {"report_cycle3", {"report", "@cycle3.json"}, kExitOk, true},
      {"report_cycle3_perturbed", {"report", "@cycle3_perturbed.json"}, kExitOk, true},
      {"report_cycle3_transposed", {"--transpose-gluing", "report", "@cycle3_perturbed.json"}, kExitOk, true},
      {"report_mixed_text", {"report", "@mixed_j.json", "--format", "text"}, kExitOk, false},
      {"report_alternating4", {"report", "@alternating4.json", "--format", "text"}, kExitOk, false},
      {"report_shear", {"report", "@shear_i2.json", "--format", "text"}, kExitOk, false},
      {"report_invalid", {"report", "@invalid_det.json"}, kExitInvalid, false},
      {"check_alternating4", {"check-orthogonal", "@alternating4.json"}, kExitOk, false},
      {"check_random_refuted", {"check-orthogonal", "@random_refuted.json"}, kExitRefuted, false},
      {"check_secondary_j2", {"check-orthogonal", "@secondary_j2.json"}, kExitRefuted, false},
      {"check_cycle3", {"check-orthogonal", "@cycle3.json"}, kExitNotApplicable, true},
      {"check_cycle3_perturbed", {"check-orthogonal", "@cycle3_perturbed.json"}, kExitNotApplicable, true},
      {"check_type3", {"check-orthogonal", "@type3.json", "--format", "text"}, kExitNotApplicable, false},
      {"reglue_cycle3", {"reglue", "@cycle3.json", "--format", "text"}, kExitOk, true},
      {"reglue_cycle3_perturbed", {"reglue", "@cycle3_perturbed.json"}, kExitOk, true},
      {"reglue_alternating4", {"reglue", "@alternating4.json", "--format", "text"}, kExitOk, false},
      {"reglue_random_refuted", {"reglue", "@random_refuted.json"}, kExitOk, false},
      {"reglue_type3", {"reglue", "@type3.json"}, kExitPrecondition, false},
      {"reglue_shear", {"reglue", "@shear_i2.json"}, kExitPrecondition, false},
      {"reglue_secondary_j2", {"reglue", "@secondary_j2.json"}, kExitPrecondition, false},
      {"reglue_mixed", {"reglue", "@mixed_j.json"}, kExitPrecondition, false},
      {"unwind_cycle3", {"unwind", "@cycle3.json", "--format", "text"}, kExitOk, true},
      {"unwind_cycle3_perturbed", {"unwind", "@cycle3_perturbed.json"}, kExitOk, true},
      {"unwind_mixed", {"unwind", "@mixed_j.json"}, kExitOk, false},
      {"unwind_shear", {"unwind", "@shear_i2.json", "--format", "text"}, kExitAssertion, false},
      {"orthogonalize_cycle3", {"orthogonalize", "@cycle3.json", "--format", "text"}, kExitOk, true},
      {"orthogonalize_cycle3_perturbed", {"orthogonalize", "@cycle3_perturbed.json"}, kExitOk, true},
      {"orthogonalize_mixed", {"orthogonalize", "@mixed_j.json"}, kExitOk, false},
      {"orthogonalize_type3", {"orthogonalize", "@type3.json"}, kExitPrecondition, false},
  };
}

inline std::vector<std::string> expand(const std::vector<std::string>& args, const std::filesystem::path& dir) {
  std::vector<std::string> out;
  for (const auto& a : args) out.push_back(!a.empty() && a[0] == '@' ? (dir / a.substr(1)).string() : a);
  return out;
}

struct Outcome {
  bool code_ok;
  bool output_ok;
  Run run;
};

inline Outcome run_case(const Case& c, const std::filesystem::path& dir) {
  Run r = gmtool(expand(c.args, dir));
  std::filesystem::path golden = dir / (c.name + ".out");
  return {r.code == c.code, std::filesystem::exists(golden) && r.out == slurp(golden), r};
}

}  // namespace cli_cases
