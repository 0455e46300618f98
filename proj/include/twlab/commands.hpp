#ifndef TWLAB_COMMANDS_HPP
#define TWLAB_COMMANDS_HPP

// Batch-driver commands behind the CLI: each cmd_* takes a parsed RunConfig,
// computes, and returns rendered output plus an exit code.  Argument parsing
// stays in the tool; tests drive these functions directly.

#include <twlab/cache.hpp>
#include <twlab/golden.hpp>
#include <twlab/nonpert.hpp>
#include <twlab/spectral.hpp>
#include <twlab/tables.hpp>
#include <twlab/wkb.hpp>

#include <json.hpp>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace twlab {

struct RunConfig {
  std::string command;
  std::vector<Rational> omegas{Rational(30), Rational(50), Rational(70), Rational(90),
                               Rational(110)};
  unsigned order = 140;
  unsigned precision = 50;
  int branch = default_branch;
  enum class Format { markdown, csv, json };
  Format format = Format::markdown;
  std::string cache_path;  // table II: directory; series: file
  unsigned jobs = 1;

  std::string table_id;        // table
  bool compute_exact = false;  // table I: recompute the exact column

  Well well = Well::central;  // series
  unsigned state = 0;

  unsigned count = 3;           // spectrum
  unsigned target_digits = 10;  // spectrum

  Rational epsilon{0};                            // wkb
  SpectralParity parity = SpectralParity::even;   // wkb: side-well parity
  std::string formula = "both";                   // nonpert
};

struct CommandResult {
  std::string output;
  int exit_code = 0;
};

namespace detail {

inline void validate(const RunConfig& config) {
  check_branch(config.branch);
  if (config.precision < PrecisionContext::min_digits)
    throw std::invalid_argument("precision must be at least 16 digits");
  for (const auto& w : config.omegas)
    if (!(w > 0)) throw std::invalid_argument("omega values must be positive");
}

inline std::string render(const TableReport& rep, RunConfig::Format f) {
  switch (f) {
    case RunConfig::Format::markdown: return render_markdown(rep);
    case RunConfig::Format::csv: return render_csv(rep);
    default: return render_json(rep);
  }
}

/// Generic small key/value row set used by the non-table commands.
struct RowSet {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
};

inline std::string render(const RowSet& rs, RunConfig::Format f) {
  std::ostringstream os;
  if (f == RunConfig::Format::json) {
    nlohmann::ordered_json j;
    j["title"] = rs.title;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rs.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < rs.columns.size(); ++i) obj[rs.columns[i]] = r[i];
      rows.push_back(obj);
    }
    if (!rs.notes.empty()) j["notes"] = rs.notes;
    return j.dump(2) + "\n";
  }
  if (f == RunConfig::Format::csv) {
    for (std::size_t i = 0; i < rs.columns.size(); ++i)
      os << rs.columns[i] << (i + 1 < rs.columns.size() ? "," : "\n");
    for (const auto& r : rs.rows)
      for (std::size_t i = 0; i < r.size(); ++i) os << r[i] << (i + 1 < r.size() ? "," : "\n");
    return os.str();
  }
  os << "## " << rs.title << "\n\n|";
  for (const auto& c : rs.columns) os << " " << c << " |";
  os << "\n|";
  for (std::size_t i = 0; i < rs.columns.size(); ++i) os << "---|";
  os << "\n";
  for (const auto& r : rs.rows) {
    os << "|";
    for (const auto& v : r) os << " " << v << " |";
    os << "\n";
  }
  for (const auto& n : rs.notes) os << "\n" << n << "\n";
  return os.str();
}

inline std::string series_cache_file(const RunConfig& config) {
  if (!config.cache_path.empty()) return config.cache_path;
  return (std::filesystem::path(default_cache_dir()) / cache_filename(config.well, config.state))
      .string();
}

}  // namespace detail

inline CommandResult cmd_table(const RunConfig& config) {
  detail::validate(config);
  PrecisionContext ctx(config.precision);
  TableReport rep;
  if (config.table_id == "I") {
    rep = build_table1(config.omegas, config.compute_exact, config.jobs);
  } else if (config.table_id == "II") {
    std::filesystem::path dir =
        config.cache_path.empty() ? std::filesystem::path(default_cache_dir())
                                  : std::filesystem::path(config.cache_path);
    auto central =
        ensure_series(Well::central, 0, config.order, (dir / cache_filename(Well::central, 0)).string());
    auto side =
        ensure_series(Well::side, 0, config.order, (dir / cache_filename(Well::side, 0)).string());
    rep = build_table2(central, side, config.order);
  } else if (config.table_id == "III") {
    rep = build_table3(config.omegas, config.jobs);
  } else if (config.table_id == "IV") {
    unsigned needed = 16;
    for (const auto& w : config.omegas)
      if (denominator(w) == 1)
        needed = std::max(needed, static_cast<unsigned>(numerator(w)) / 2 + 5);
    std::filesystem::path dir =
        config.cache_path.empty() ? std::filesystem::path(default_cache_dir())
                                  : std::filesystem::path(config.cache_path);
    auto central =
        ensure_series(Well::central, 0, needed, (dir / cache_filename(Well::central, 0)).string());
    rep = build_table4(central, config.omegas);
  } else {
    throw std::invalid_argument("table id must be one of I, II, III, IV");
  }
  return {detail::render(rep, config.format), rep.all_pass() ? 0 : 1};
}

inline CommandResult cmd_series(const RunConfig& config) {
  detail::validate(config);
  PrecisionContext ctx(config.precision);
  const std::string file = detail::series_cache_file(config);
  RationalSeries s = ensure_series(config.well, config.state, config.order, file);

  detail::RowSet rs;
  rs.title = std::string("series ") + to_string(config.well) + " state " +
             std::to_string(config.state);
  rs.columns = {"m", "numerator", "denominator", "value"};
  for (unsigned m = 0; m <= std::min(s.order(), config.order); ++m) {
    rs.rows.push_back({std::to_string(m), numerator(s.c(m)).str(), denominator(s.c(m)).str(),
                       to_string_sig(to_real(s.c(m)), 20)});
  }
  rs.notes.push_back("cache: " + file + " (" + std::to_string(s.order()) + " records)");
  return {detail::render(rs, config.format), 0};
}

inline CommandResult cmd_spectrum(const RunConfig& config) {
  detail::validate(config);
  PrecisionContext ctx(config.precision);
  detail::RowSet rs;
  rs.title = "reference spectrum";
  rs.columns = {"omega", "level", "parity", "value", "stable_digits"};
  for (const auto& w : config.omegas) {
    BasisConfig cfg;
    cfg.basis_size = 64;
    cfg.target_digits = config.target_digits;
    auto levels = eigenvalues(w, config.count, cfg);
    for (const auto& l : levels) {
      rs.rows.push_back({w.str(), std::to_string(l.level), to_string(l.parity),
                         to_string_sig(l.value, static_cast<int>(config.target_digits)),
                         std::to_string(l.stable_digits)});
    }
  }
  return {detail::render(rs, config.format), 0};
}

inline CommandResult cmd_nonpert(const RunConfig& config) {
  detail::validate(config);
  PrecisionContext ctx(config.precision);
  detail::RowSet rs;
  rs.title = "nonperturbative level formulas";
  rs.columns = {"omega", "formula", "delta21", "E0", "E1", "E2"};
  const bool st = config.formula == "st" || config.formula == "both";
  const bool al = config.formula == "al" || config.formula == "both";
  if (!st && !al) throw std::invalid_argument("formula must be st, al or both");
  for (const auto& w : config.omegas) {
    Real wr = to_real(w);
    if (st)
      rs.rows.push_back({w.str(), "ST", to_string_sig(delta21(wr, Formula::st), 5),
                         to_string_sig(energy_st_omega(wr, 0), 20),
                         to_string_sig(energy_st_omega(wr, 1), 20),
                         to_string_sig(energy_st_omega(wr, 2), 20)});
    if (al)
      rs.rows.push_back({w.str(), "AL", to_string_sig(delta21(wr, Formula::al), 5),
                         to_string_sig(energy_al(wr, 0), 20), to_string_sig(energy_al(wr, 1), 20),
                         to_string_sig(energy_al(wr, 2), 20)});
  }
  return {detail::render(rs, config.format), 0};
}

inline CommandResult cmd_wkb(const RunConfig& config) {
  detail::validate(config);
  PrecisionContext ctx(config.precision);
  detail::RowSet rs;
  rs.title = "WKB quantization roots";
  rs.columns = {"omega", "level", "energy", "shift", "valley_shift", "shift_ratio",
                "residual_imag"};
  for (const auto& w : config.omegas) {
    auto params = WellParams::from_omega(to_real(w), config.epsilon);
    if (params.asymmetry_flagged())
      rs.notes.push_back("warning: eps*g^2 is not small at omega=" + w.str() +
                         "; leading-order formulas are strained");

    auto emit = [&](const std::string& label, const WkbRoot& root, const Real& valley) {
      rs.rows.push_back({w.str(), label, to_string_sig(root.energy, 25),
                         to_string_sig(root.shift, 15), to_string_sig(valley, 15),
                         to_string_sig(root.shift / valley, 10),
                         to_string_sig(root.residual_imag, 5)});
      if (root.multiple_roots)
        rs.notes.push_back("warning: multiple sign changes near " + label + " at omega=" +
                           w.str());
    };

    auto central = solve_level(WkbLevelSpec::central(0, params, config.branch));
    emit("central n0=0", central, energy_st(LevelSpec::central(0), params, config.branch).shift_real);
    int sign = config.parity == SpectralParity::even ? +1 : -1;
    auto side = solve_level(WkbLevelSpec::side(0, config.parity, params, config.branch));
    emit(std::string("side n=0 ") + to_string(config.parity), side,
         energy_st(LevelSpec::side(0, sign), params, config.branch).shift_real);
  }
  return {detail::render(rs, config.format), 0};
}

inline CommandResult run_command(const RunConfig& config) {
  if (config.command == "table") return cmd_table(config);
  if (config.command == "series") return cmd_series(config);
  if (config.command == "spectrum") return cmd_spectrum(config);
  if (config.command == "nonpert") return cmd_nonpert(config);
  if (config.command == "wkb") return cmd_wkb(config);
  throw std::invalid_argument("unknown command '" + config.command + "'");
}

}  // namespace twlab

#endif  // TWLAB_COMMANDS_HPP
