// twlab: reproduces the triple-well spectral tables and exposes the series,
// eigensolver, nonperturbative-formula and WKB machinery as subcommands.

#include <twlab/commands.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace {

twlab::RunConfig::Format parse_format(const std::string& text) {
  if (text == "md" || text == "markdown") return twlab::RunConfig::Format::markdown;
  if (text == "csv") return twlab::RunConfig::Format::csv;
  if (text == "json") return twlab::RunConfig::Format::json;
  throw CLI::ValidationError("--format must be md, csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triple-well spectral laboratory"};
  app.require_subcommand(1);

  twlab::RunConfig config;
  std::vector<std::string> omega_args;
  std::string format_arg = "md";
  std::string epsilon_arg = "0";
  std::string well_arg = "central";
  std::string parity_arg = "even";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--precision", config.precision, "working precision in decimal digits")
        ->capture_default_str();
    cmd->add_option("--branch", config.branch, "branch sign for (-1)^x, +1 or -1")
        ->check(CLI::IsMember({-1, 1}))
        ->capture_default_str();
    cmd->add_option("--format", format_arg, "output format: md, csv or json")
        ->capture_default_str();
    cmd->add_option("--jobs", config.jobs, "worker budget for independent cells")
        ->check(CLI::Range(1u, 64u))
        ->capture_default_str();
    cmd->add_option("--omega", omega_args, "omega grid (comma separated)")->delimiter(',');
  };

  auto* table = app.add_subcommand("table", "reproduce a published table against golden digits");
  add_common(table);
  table->add_option("--id", config.table_id, "table id: I, II, III or IV")->required();
  table->add_option("--order", config.order, "series order for table II")->capture_default_str();
  table->add_option("--cache", config.cache_path, "cache directory (default $TWLAB_CACHE_DIR)");
  table->add_flag("--compute-exact", config.compute_exact,
                  "recompute the exact column with the eigensolver (table I)");

  auto* series = app.add_subcommand("series", "generate perturbation-series coefficients");
  add_common(series);
  series->add_option("--well", well_arg, "central or side")->check(CLI::IsMember({"central", "side"}));
  series->add_option("--state", config.state, "state index")->capture_default_str();
  series->add_option("--order", config.order, "maximum order in g^2")->required();
  series->add_option("--cache", config.cache_path, "cache file to write/extend");

  auto* spectrum = app.add_subcommand("spectrum", "certified reference eigenvalues");
  add_common(spectrum);
  spectrum->add_option("--count", config.count, "number of levels")->capture_default_str();
  spectrum->add_option("--target-digits", config.target_digits, "digits required stable under basis doubling")
      ->capture_default_str();

  auto* wkb = app.add_subcommand("wkb", "solve the WKB quantization condition");
  add_common(wkb);
  wkb->add_option("--epsilon", epsilon_arg, "asymmetry parameter (exact decimal)")
      ->capture_default_str();
  wkb->add_option("--parity", parity_arg, "side-well parity: even or odd")
      ->check(CLI::IsMember({"even", "odd"}))
      ->capture_default_str();

  auto* nonpert = app.add_subcommand("nonpert", "closed-form nonperturbative energies");
  add_common(nonpert);
  nonpert->add_option("--formula", config.formula, "st, al or both")
      ->check(CLI::IsMember({"st", "al", "both"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.format = parse_format(format_arg);
    config.epsilon = twlab::rational_from_decimal(epsilon_arg);
    config.well = well_arg == "side" ? twlab::Well::side : twlab::Well::central;
    config.parity =
        parity_arg == "odd" ? twlab::SpectralParity::odd : twlab::SpectralParity::even;
    if (!omega_args.empty()) {
      config.omegas.clear();
      for (const auto& w : omega_args) config.omegas.push_back(twlab::rational_from_decimal(w));
    }

    twlab::CommandResult result = twlab::run_command(config);
    std::fputs(result.output.c_str(), stdout);
    return result.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "twlab: error: %s\n", e.what());
    return 2;
  }
}
