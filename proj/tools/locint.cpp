#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "locint/checks.hpp"
#include "locint/commutant.hpp"
#include "locint/error.hpp"
#include "locint/scenario.hpp"
#include "locint/serialize.hpp"

using namespace locint;

namespace {

int cmd_run(const std::string& path, const std::string& out, const std::string& format,
            std::optional<std::uint64_t> seed, bool timings) {
  Scenario s = load_scenario(path);
  if (seed) s.seed = *seed;
  RunOptions opts;
  opts.timings = timings;
  const Report report = run_scenario(s, opts);
  const ReportFormat fmt = format == "text" ? ReportFormat::Text : ReportFormat::Json;
  if (out.empty())
    std::cout << emit_report(report, fmt);
  else
    write_report(report, fmt, out);
  std::cerr << report.passed() << " passed, " << report.failed() << " failed\n";
  return report.failed() == 0 ? 0 : 1;
}

int cmd_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "malformed JSON at byte " + std::to_string(e.byte));
  }
  const auto text = json{{"domains", {{"input", j}}}, {"tasks", {{{"task", "validate"}, {"domain", "input"}}}}}.dump();
  const Report report = run_scenario(parse_scenario(text));
  std::cout << emit_report(report, ReportFormat::Text);
  return report.failed() == 0 ? 0 : 1;
}

int cmd_demo(int depth) {
  const auto dint = two_atom_flag_instance();
  std::cout << "two atoms {1, 2}, counting measure, chain 1 <= 2, fiber dims (1, 2)\n";
  std::cout << to_json(dint).dump() << "\n\n";
  const CheckReport r = verify_dec_eq_diag_commutant(dint);
  std::cout << "DEC = DIAG': " << (r.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& [k, v] : r.dimensions) std::cout << "  dim " << k << " = " << v << "\n";
  for (const auto& [k, v] : r.residuals) std::cout << "  " << k << " = " << CheckReport::format_double(v) << "\n";
  std::cout << "  relation: " << r.details.at("relation") << "\n\n";

  const auto rule = lazy_rule("diag_n", depth);
  std::cout << "S e_k = k e_k on the standard flag H_n = span{e_1..e_n}\n";
  std::cout << "  n   p_n(S) = |S restricted to H_n|\n";
  for (int n = 1; n <= depth; ++n) {
    const auto t = lazy_truncate(rule, n);
    std::printf("  %-3d %.12g\n", n, uniform_seminorm(t, t.domain()->top()));
  }
  std::cout << "p_n grows without bound: S is locally bounded but not bounded\n";
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct integrals of locally Hilbert spaces at desk scale"};
  app.require_subcommand(1);

  std::string scenario, out, format = "json";
  std::optional<std::uint64_t> seed;
  bool timings = false;
  auto* run = app.add_subcommand("run", "run a scenario and emit a report");
  run->add_option("scenario", scenario, "scenario JSON file")->required();
  run->add_option("--out", out, "write the report here instead of stdout");
  run->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_flag("--timings", timings, "include wall-clock timings (breaks byte-identical reports)");

  std::string domain;
  auto* val = app.add_subcommand("validate", "validate a quantized or direct-integral domain");
  val->add_option("domain", domain, "domain JSON file")->required();

  int depth = 8;
  auto* demo = app.add_subcommand("demo", "built-in two-atom instance and the diagonal lazy chain");
  demo->add_option("--depth", depth, "truncation depth of the lazy chain")->check(CLI::Range(1, 64));

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(scenario, out, format, seed, timings);
    if (*val) return cmd_validate(domain);
    return cmd_demo(depth);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
