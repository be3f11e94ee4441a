#include "golden.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "commscore/csv.hpp"
#include "generators.hpp"

namespace commscore::testing {

std::filesystem::path fixtures_dir() { return COMMSCORE_FIXTURES_DIR; }

RunConfig golden_config(const std::filesystem::path& out) {
  RunConfig c;
  c.period = parse_period("2012-10-01/2013-01-01");
  c.generated_at = "2013-01-01T00:00:00Z";
  c.out = out;
  return c;
}

bool GoldenRun::passed() const {
  return exit_code == kExitOk && !files.empty() &&
         std::all_of(files.begin(), files.end(), [](const auto& f) { return f.identical; });
}

namespace {

std::string first_difference(const std::string& got, const std::string& want) {
  std::istringstream a(got), b(want);
  std::string la, lb;
  for (std::size_t line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) return "differs only in line endings";
    if (ha != hb || la != lb) return fmt::format("line {}: got '{}' want '{}'", line, ha ? la : "<eof>", hb ? lb : "<eof>");
  }
}

}  // namespace

GoldenRun run_golden_pipeline(const std::filesystem::path& work) {
  GoldenRun run;
  std::ostringstream log;
  const auto fixtures = fixtures_dir();
  const auto archive = work / "archive";

  run.exit_code = cmd_ingest({fixtures / "mail.csv"}, golden_config(archive), log);
  if (run.exit_code == kExitOk) run.exit_code = cmd_analyze(archive, golden_config(work), log);
  if (run.exit_code == kExitOk)
    run.exit_code = cmd_correlate(work / "metrics.csv", fixtures / "survey.csv", golden_config(work), log);
  if (run.exit_code != kExitOk) return run;

  for (const char* name : {"metrics.csv", "correlations.csv", "scorecard.json"}) {
    const auto got = slurp(work / name);
    const auto want = slurp(fixtures / "golden" / name);
    GoldenComparison c{name, got == want, ""};
    if (!c.identical) c.detail = first_difference(got, want);
    run.files.push_back(c);
  }
  return run;
}

SynthRun run_synth_pipeline(const SynthSpec& spec, const std::filesystem::path& work) {
  SynthRun run;
  std::ostringstream log;
  RunConfig config;
  config.out = work / "archive";
  run.exit_code = cmd_synth(spec, work, log);
  if (run.exit_code == kExitOk) run.exit_code = cmd_ingest({work / "mail.csv"}, config, log);
  config.out = work;
  if (run.exit_code == kExitOk) run.exit_code = cmd_analyze(work / "archive", config, log);
  if (run.exit_code == kExitOk) run.exit_code = cmd_correlate(work / "metrics.csv", work / "survey.csv", config, log);
  if (run.exit_code != kExitOk) return run;

  std::ifstream in(work / "correlations_long.csv");
  CsvReader reader(in, "correlations_long.csv");
  reader.next();
  const auto number = [](const std::string& s) -> std::optional<double> {
    if (s == "NA") return std::nullopt;
    return std::stod(s);
  };
  while (auto rec = reader.next()) {
    const auto& f = rec->fields;
    run.cells.push_back({f.at(0), f.at(1), number(f.at(2)), number(f.at(3)), std::stoul(f.at(4)), f.at(5) == "true"});
  }
  return run;
}

}  // namespace commscore::testing
