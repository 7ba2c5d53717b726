#include "graphmanifold/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "graphmanifold/errors.hpp"
#include "graphmanifold/generators.hpp"
#include "graphmanifold/json_io.hpp"
#include "graphmanifold/report.hpp"

namespace gm {

namespace {

struct Config {
  std::string input = "-";
  std::string output;
  std::string format = "json";
  bool transpose_gluing = false;
  std::uint64_t seed = 0;
  int verbosity = 0;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

// Raised to abort a command with a given exit code after the message has been
// written.
struct Exit {
  int code;
};

std::string read_input(const Config& cfg, Streams& io) {
  std::ostringstream ss;
  if (cfg.input == "-") {
    ss << io.in.rdbuf();
  } else {
    std::ifstream f(cfg.input, std::ios::binary);
    if (!f) {
      io.err << "error: cannot open " << cfg.input << "\n";
      throw Exit{kExitUsage};
    }
    ss << f.rdbuf();
  }
  return ss.str();
}

ManifoldDocument load(const Config& cfg, Streams& io) {
  try {
    ManifoldDocument doc = parse_document(read_input(cfg, io), {cfg.transpose_gluing});
    if (cfg.verbosity > 0)
      io.err << "loaded " << doc.manifold.blocks().size() << " blocks, " << doc.manifold.edges().size()
             << " edges" << (cfg.transpose_gluing ? " (transposed reading)" : "") << "\n";
    return doc;
  } catch (const ParseError& e) {
    io.err << "parse error: " << e.what() << "\n";
    throw Exit{kExitUsage};
  }
}

void refuse_input_as_output(const std::string& input, const std::string& output, Streams& io) {
  std::error_code ec;
  if (output.empty() || input == "-" || !std::filesystem::exists(output)) return;
  if (std::filesystem::equivalent(input, output, ec)) {
    io.err << "error: refusing to overwrite the input file " << input << "\n";
    throw Exit{kExitUsage};
  }
}

void write_file(const Config& cfg, const std::string& text, Streams& io) {
  refuse_input_as_output(cfg.input, cfg.output, io);
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) {
    io.err << "error: cannot write " << cfg.output << "\n";
    throw Exit{kExitUsage};
  }
  f << text;
}

void emit(const Json& j, Streams& io) { io.out << render(j) << "\n"; }

// Rejects invalid manifolds with the validation report on stdout.
void require_valid_input(const GraphManifold& g, const Config& cfg, Streams& io) {
  ValidationReport r = validate(g);
  if (r.valid()) return;
  if (cfg.format == "text") {
    for (const auto& v : r.violations)
      io.out << "invalid: " << rule_name(v.rule) << (v.location.empty() ? "" : " at " + v.location) << ": "
             << v.message << "\n";
  } else {
    emit(validation_json(r), io);
  }
  throw Exit{kExitInvalid};
}

int cmd_validate(const Config& cfg, Streams& io) {
  ManifoldDocument doc = load(cfg, io);
  ValidationReport r = validate(doc.manifold);
  if (cfg.format == "text") {
    if (r.valid()) io.out << "valid\n";
    for (const auto& v : r.violations)
      io.out << "invalid: " << rule_name(v.rule) << (v.location.empty() ? "" : " at " + v.location) << ": "
             << v.message << "\n";
  } else {
    emit(validation_json(r), io);
  }
  return r.valid() ? kExitOk : kExitInvalid;
}

int cmd_report(const Config& cfg, Streams& io) {
  ManifoldDocument doc = load(cfg, io);
  const GraphManifold& g = doc.manifold;
  require_valid_input(g, cfg, io);
  InvariantReport inv = compute_invariants(g);
  Json out;
  out["schema"] = "gm/1";
  out["kind"] = "report";
  out["convention"] = convention_json(g, cfg.transpose_gluing);
  out["invariants"] = invariants_json(g, inv);
  out["charge"] = charge_json(g, inv);
  if (cfg.format == "text") {
    const Json& ij = out["invariants"];
    io.out << "manifold type " << ij["manifoldType"].dump() << "\n";
    for (const auto& e : ij["edges"])
      io.out << "edge " << e["id"].get<std::string>() << ": i = " << e["i"].dump() << ", P = " << e["P"].dump()
             << "\n";
    for (const auto& v : ij["vertices"])
      io.out << "block " << v["id"].get<std::string>() << ": type " << v["type"].dump() << ", j = " << v["j"].dump()
             << ", classes " << v["classSizes"].dump() << "\n";
    for (const auto& v : out["charge"]["vertices"])
      io.out << "charge " << v["id"].get<std::string>() << ": dimQ " << v["dimQ"].dump() << ", dimA "
             << v["dimA"].dump() << ", vanishing " << v["chargeVanishing"].dump() << "\n";
    if (out["convention"].contains("note")) io.out << "note: " << out["convention"]["note"].get<std::string>() << "\n";
  } else {
    emit(out, io);
  }
  return kExitOk;
}

int cmd_check(const Config& cfg, const std::string& witness_out, Streams& io) {
  refuse_input_as_output(cfg.input, witness_out, io);
  ManifoldDocument doc = load(cfg, io);
  const GraphManifold& g = doc.manifold;
  require_valid_input(g, cfg, io);
  OrthogonalityVerdict verdict = orthogonality_criterion(g);

  std::optional<WitnessResult> witness;
  std::string witness_note;
  bool searchable = verdict.status == VerdictStatus::Pass ||
                    (verdict.status == VerdictStatus::Refuted && verdict.failing_condition == 3);
  if (searchable) {
    try {
      witness = orthogonality_witness(g);
    } catch (const SearchBudgetExceeded& e) {
      witness_note = e.what();
    }
  }
  bool consistent = !witness || (verdict.status == VerdictStatus::Pass) == witness->witness.has_value();

  Json out;
  out["schema"] = "gm/1";
  out["kind"] = "check-orthogonal";
  out["verdict"] = verdict_json(verdict);
  out["witness"] = witness ? witness_json(g, *witness) : Json(nullptr);
  if (!witness_note.empty()) out["witnessNote"] = witness_note;
  out["consistent"] = consistent;

  if (cfg.format == "text") {
    io.out << status_name(verdict.status);
    if (verdict.failing_condition) io.out << ": condition " << verdict.failing_condition << " at " << verdict.location;
    if (!verdict.detail.empty()) io.out << " (" << verdict.detail << ")";
    io.out << "\n";
    if (witness && witness->witness) io.out << "witness found after " << witness->candidates_tried << " candidates\n";
  } else {
    emit(out, io);
  }
  if (!witness_out.empty() && witness && witness->witness) {
    Config wc = cfg;
    wc.output = witness_out;
    write_file(wc, dump_manifold(witness->witness->orthogonal), io);
  }
  if (!consistent) {
    io.err << "error: the criterion and the witness search disagree\n";
    return kExitAssertion;
  }
  switch (verdict.status) {
    case VerdictStatus::Pass: return kExitOk;
    case VerdictStatus::Refuted: return kExitRefuted;
    case VerdictStatus::NotApplicable: return kExitNotApplicable;
  }
  return kExitOk;
}

Json precondition_json(const std::string& kind, const std::string& hypothesis, const std::string& location,
                       const std::string& message) {
  Json j;
  j["schema"] = "gm/1";
  j["kind"] = kind;
  j["status"] = "precondition-failed";
  j["hypothesis"] = hypothesis;
  j["location"] = location;
  j["message"] = message;
  return j;
}

template <class Run>
int run_transform(const std::string& kind, const Config& cfg, Streams& io, Run run) {
  refuse_input_as_output(cfg.input, cfg.output, io);
  ManifoldDocument doc = load(cfg, io);
  require_valid_input(doc.manifold, cfg, io);
  Json report;
  GraphManifold output;
  bool ok = false;
  try {
    std::tie(report, output, ok) = run(doc.manifold);
  } catch (const PreconditionFailed& e) {
    emit(precondition_json(kind, e.hypothesis(), e.location(), e.what()), io);
    io.err << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const TypeObstruction& e) {
    emit(precondition_json(kind, "type", e.vertex(), e.what()), io);
    io.err << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const SecondaryIndexObstruction& e) {
    emit(precondition_json(kind, "secondary-index", e.vertex(), e.what()), io);
    io.err << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Error& e) {
    Json j;
    j["schema"] = "gm/1";
    j["kind"] = kind;
    j["status"] = "assertion-failed";
    j["message"] = e.what();
    emit(j, io);
    io.err << "assertion failed: " << e.what() << "\n";
    return kExitAssertion;
  }
  Json out;
  out["schema"] = "gm/1";
  for (auto& [k, v] : report.items()) out[k] = v;
  if (cfg.format == "text") {
    io.out << kind << ": " << out["status"].get<std::string>() << "\n";
    for (const auto& e : out["ledger"])
      if (!e["passed"].get<bool>())
        io.out << "  failed " << e["check"].get<std::string>() << " at " << e["location"].get<std::string>() << " ["
               << e["kind"].get<std::string>() << "] " << e["detail"].get<std::string>() << "\n";
    if (cfg.output.empty()) io.out << dump_manifold(output);
  } else {
    emit(out, io);
  }
  if (!cfg.output.empty()) write_file(cfg, dump_manifold(output), io);
  if (!ok) {
    bool claim = false;
    for (const auto& e : out["ledger"]) claim = claim || (!e["passed"].get<bool>() && e["kind"] == "claim-discrepancy");
    io.err << "assertion failed" << (claim ? " (the index law as stated does not hold here, see ledger)" : "") << "\n";
    return kExitAssertion;
  }
  return kExitOk;
}

struct GenerateOptions {
  std::size_t k = 3;
  bool perturbed = false;
  bool alternating = false;
  std::string shape = "cycle";
  std::string target = "i1j1type2";
  std::size_t min_vertices = 2;
  std::size_t max_vertices = 8;
};

int cmd_generate(const std::string& kind, const GenerateOptions& o, const Config& cfg, Streams& io) {
  GraphManifold g;
  Json meta;
  meta["generator"] = kind;
  try {
    if (kind == "cycle") {
      g = gen_cycle_example(o.k, o.perturbed);
      meta["k"] = o.k;
      meta["perturbed"] = o.perturbed;
    } else if (kind == "orthogonal") {
      if (o.alternating) {
        if (o.k % 2 != 0) {
          io.err << "error: the alternating cycle needs an even length\n";
          return kExitUsage;
        }
        g = gen_alternating_cycle(o.k);
        meta["alternating"] = true;
        meta["k"] = o.k;
      } else {
        Shape s;
        if (o.shape == "cycle") s = cycle_shape(o.k);
        else if (o.shape == "theta") s = theta_shape();
        else if (o.shape == "complete") s = complete_shape(o.k);
        else {
          std::mt19937_64 rng(cfg.seed);
          s = random_shape(rng, o.k, 1);
        }
        g = gen_random_orthogonal(s, cfg.seed);
        meta["shape"] = o.shape;
        meta["k"] = o.k;
        meta["seed"] = cfg.seed;
      }
    } else {
      RandomOptions ro;
      if (o.target == "i1j1type2") ro.target = RandomTarget::TypeTwoUnit;
      else if (o.target == "unconstrained") ro.target = RandomTarget::Unconstrained;
      else ro.target = RandomTarget::MixedSecondary;
      ro.min_vertices = o.min_vertices;
      ro.max_vertices = o.max_vertices;
      g = gen_random(cfg.seed, ro);
      meta["target"] = o.target;
      meta["seed"] = cfg.seed;
    }
  } catch (const BudgetExceeded& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const std::invalid_argument& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::string text = dump_manifold(g, meta.dump());
  if (cfg.output.empty()) {
    io.out << text;
  } else {
    Config c = cfg;
    c.input = "-";
    write_file(c, text, io);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams io{in, out, err};
  Config cfg;
  CLI::App app{"Graph-manifold W-structure tool", "gmtool"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--transpose-gluing", cfg.transpose_gluing, "Read every stored matrix as its transpose");
  app.add_option("--seed", cfg.seed, "Random seed for generators");
  app.add_option("-o,--output", cfg.output, "Output file for manifolds");
  app.add_flag("-v,--verbose", cfg.verbosity, "More diagnostics on standard error");

  auto add_input = [&](CLI::App* sub) { sub->add_option("input", cfg.input, "Manifold JSON file or - for stdin"); };
  auto* validate_cmd = app.add_subcommand("validate", "Check the structural rules");
  auto* report_cmd = app.add_subcommand("report", "Invariants and charge data");
  auto* check_cmd = app.add_subcommand("check-orthogonal", "Decide orthogonality of a type-2 manifold");
  auto* reglue_cmd = app.add_subcommand("reglue", "Re-glue to signed-permutation gluings");
  auto* unwind_cmd = app.add_subcommand("unwind", "Unwind intersection numbers to 1");
  auto* orth_cmd = app.add_subcommand("orthogonalize", "Unwind, then re-glue");
  auto* gen_cmd = app.add_subcommand("generate", "Emit a generated manifold");
  for (auto* s : {validate_cmd, report_cmd, check_cmd, reglue_cmd, unwind_cmd, orth_cmd}) add_input(s);
  std::string witness_out;
  check_cmd->add_option("--witness-out", witness_out, "Write the orthogonal witness manifold here");

  GenerateOptions gopt;
  gen_cmd->require_subcommand(1);
  auto* gen_cycle = gen_cmd->add_subcommand("cycle", "k-cycle example");
  gen_cycle->add_option("--k", gopt.k, "Cycle length")->check(CLI::Range(3, 1000000));
  gen_cycle->add_flag("--perturbed", gopt.perturbed, "Perturb the v2 -> v3 gluing");
  auto* gen_orth = gen_cmd->add_subcommand("orthogonal", "Orthogonal manifold from permutations");
  gen_orth->add_flag("--alternating", gopt.alternating, "Alternate the two swaps along a cycle");
  gen_orth->add_option("--k", gopt.k, "Number of blocks")->check(CLI::Range(1, 1000000));
  gen_orth->add_option("--shape", gopt.shape)->check(CLI::IsMember({"cycle", "theta", "complete", "random"}));
  auto* gen_rand = gen_cmd->add_subcommand("random", "Seeded random manifold");
  gen_rand->add_option("--target", gopt.target)->check(CLI::IsMember({"i1j1type2", "unconstrained", "mixed_j"}));
  gen_rand->add_option("--min-vertices", gopt.min_vertices)->check(CLI::Range(1, 64));
  gen_rand->add_option("--max-vertices", gopt.max_vertices)->check(CLI::Range(1, 64));
  for (auto* s : {gen_cycle, gen_orth, gen_rand}) s->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(cfg, io);
    if (*report_cmd) return cmd_report(cfg, io);
    if (*check_cmd) return cmd_check(cfg, witness_out, io);
    if (*reglue_cmd)
      return run_transform("reglue", cfg, io, [](const GraphManifold& g) {
        ReglueResult r = reglue(g);
        return std::make_tuple(reglue_json(r), r.output, r.ledger.all_passed());
      });
    if (*unwind_cmd)
      return run_transform("unwind", cfg, io, [](const GraphManifold& g) {
        UnwindResult r = unwind(g);
        return std::make_tuple(unwind_json(r), r.output, r.ledger.all_passed());
      });
    if (*orth_cmd)
      return run_transform("orthogonalize", cfg, io, [](const GraphManifold& g) {
        PipelineResult r = orthogonalize(g);
        return std::make_tuple(pipeline_json(r), r.output, r.ledger.all_passed());
      });
    if (*gen_cmd) {
      std::string kind = *gen_cycle ? "cycle" : *gen_orth ? "orthogonal" : "random";
      return cmd_generate(kind, gopt, cfg, io);
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}

}  // namespace gm
