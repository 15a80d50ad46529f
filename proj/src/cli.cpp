#include "spinstar/cli.hpp"

#include "spinstar/analysis.hpp"
#include "spinstar/io.hpp"
#include "spinstar/oracles.hpp"
#include "spinstar/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace spinstar::cli {

namespace {

constexpr double kDefaultTmax = 4.0 * std::numbers::pi;
constexpr int kDefaultSteps = 4001;

std::string sci(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::scientific, 3);
  return std::string(buffer, result.ptr);
}

struct CommonOptions {
  std::string scenario = "cops";
  int ligands = 3;
  double coupling = 1.0;
  std::string config_path;
  double tmax = kDefaultTmax;
  int steps = kDefaultSteps;
  std::vector<std::string> quantities;
  std::vector<double> amps;
  std::string output = "-";
  std::string format = "csv";
  bool gnuplot = false;
};

void add_model_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--scenario", opt.scenario, "Initial state: cops, lops or custom-amplitudes")
      ->check(CLI::IsMember({"cops", "lops", "custom-amplitudes"}));
  cmd->add_option("--ligands", opt.ligands, "Number of ligand qubits")->check(CLI::Range(1, 16));
  cmd->add_option("--coupling", opt.coupling, "Exchange coupling J");
  cmd->add_option("--config", opt.config_path,
                  "Plain-text key=value model file (ligand_count, coupling)");
  cmd->add_option("--amps", opt.amps,
                  "Initial one-particle amplitudes for custom-amplitudes, comma separated")
      ->delimiter(',');
}

void add_grid_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--tmax", opt.tmax, "End of the time grid, units of 1/J");
  cmd->add_option("--steps", opt.steps, "Grid points including both ends")->check(CLI::Range(2, 10000000));
}

StarModel resolve_model(const CLI::App* cmd, const CommonOptions& opt) {
  StarModel model;
  if (!opt.config_path.empty()) {
    model = model_from_config(opt.config_path);
  }
  if (opt.config_path.empty() || cmd->count("--ligands") > 0) {
    model.ligand_count = opt.ligands;
  }
  if (opt.config_path.empty() || cmd->count("--coupling") > 0) {
    model.coupling = opt.coupling;
  }
  validate(model);
  return model;
}

ScanConfig make_scan_config(const CLI::App* cmd, const CommonOptions& opt) {
  ScanConfig config;
  config.model = resolve_model(cmd, opt);
  config.scenario = scenario_from_string(opt.scenario);
  config.t_max = opt.tmax;
  config.steps = opt.steps;
  config.quantities = opt.quantities;
  if (config.scenario == Scenario::Custom) {
    config.custom_amplitudes.resize(static_cast<Eigen::Index>(opt.amps.size()));
    for (std::size_t k = 0; k < opt.amps.size(); ++k) {
      config.custom_amplitudes(static_cast<Eigen::Index>(k)) = opt.amps[k];
    }
  }
  return config;
}

std::vector<std::string> default_quantities(Scenario scenario) {
  switch (scenario) {
    case Scenario::Cops:
      return {"c_ucp_l", "c_l_l"};
    case Scenario::Lops:
      return {"c_cp_ul", "c_cp_nul", "c_ul_nul", "c_nul_nul"};
    case Scenario::Custom:
      return {"sum_c", "spread", "w_fidelity"};
  }
  return {};
}

// Returns kExitIoError on failure to write.
int write_text_output(const std::string& path, const std::string& text, std::ostream& out,
                      std::ostream& err) {
  if (path == "-") {
    out << text;
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return kExitIoError;
  }
  file << text;
  file.flush();
  if (!file) {
    err << "error: failed while writing '" << path << "'\n";
    return kExitIoError;
  }
  return kExitOk;
}

int run_evolve(const CLI::App* cmd, CommonOptions& opt, std::ostream& out, std::ostream& err) {
  ScanConfig config = make_scan_config(cmd, opt);
  if (config.quantities.empty()) {
    config.quantities = default_quantities(config.scenario);
  }
  const TimeSeries series = scan(config);

  std::string payload;
  if (opt.format == "csv") {
    std::ostringstream stream;
    write_time_series_csv(series, stream);
    payload = stream.str();
  } else {
    nlohmann::json j = time_series_to_json(series);
    j["scenario"] = to_string(config.scenario);
    j["model"] = {{"ligand_count", config.model.ligand_count},
                  {"coupling", config.model.coupling}};
    payload = j.dump(2) + "\n";
  }
  const int status = write_text_output(opt.output, payload, out, err);
  if (status != kExitOk) return status;

  if (opt.gnuplot) {
    if (opt.output == "-" || opt.format != "csv") {
      err << "error: --gnuplot needs --format csv and --output <file>\n";
      return kExitUsageError;
    }
    std::ostringstream script;
    write_gnuplot_script(series, opt.output, script);
    const int gp_status = write_text_output(opt.output + ".gp", script.str(), out, err);
    if (gp_status != kExitOk) return gp_status;
  }
  return kExitOk;
}

int run_events(const CLI::App* cmd, CommonOptions& opt, const std::string& detector,
               std::ostream& out, std::ostream& err) {
  ScanConfig config = make_scan_config(cmd, opt);
  EventList events;

  if (detector == "tws" || detector == "pstws") {
    const EventKind wanted = detector == "tws" ? EventKind::Tws : EventKind::Pstws;
    EventList all = w_state_events(config);
    for (Event& event : all.events) {
      if (event.kind == wanted) events.events.push_back(std::move(event));
    }
  } else if (detector == "disentangle") {
    events = disentangle_events(config);
  } else {
    if (config.quantities.empty()) {
      config.quantities = default_quantities(config.scenario);
    }
    const TimeSeries series = scan(config);
    if (detector == "peaks") {
      for (const std::string& name : series.names) {
        EventList found = find_peaks(series.grid, series.column(name), true);
        for (Event& event : found.events) {
          event.label = name;
          events.events.push_back(std::move(event));
        }
      }
    } else {  // crossings
      if (series.names.size() < 2) {
        err << "error: crossings need at least two quantities\n";
        return kExitUsageError;
      }
      for (std::size_t p = 0; p < series.names.size(); ++p) {
        for (std::size_t q = p + 1; q < series.names.size(); ++q) {
          EventList found =
              find_crossings(series.grid, series.columns[p], series.columns[q], true);
          events.degenerate_input = events.degenerate_input || found.degenerate_input;
          for (Event& event : found.events) {
            event.label = series.names[p] + " x " + series.names[q];
            events.events.push_back(std::move(event));
          }
        }
      }
    }
    std::sort(events.events.begin(), events.events.end(),
              [](const Event& a, const Event& b) { return a.t < b.t; });
  }

  nlohmann::json j = event_list_to_json(events);
  j["detector"] = detector;
  j["scenario"] = to_string(config.scenario);
  return write_text_output(opt.output, j.dump(2) + "\n", out, err);
}

int run_verify(const CLI::App* cmd, CommonOptions& opt, double tolerance, bool deep,
               unsigned seed, int trials, std::ostream& out, std::ostream& err) {
  const StarModel model = resolve_model(cmd, opt);
  bool all_pass = true;

  const auto print_check = [&](const VerificationCheck& check) {
    out << (check.pass ? "  [pass] " : "  [FAIL] ") << check.name << "  max dev "
        << sci(check.max_deviation) << "  (tol " << sci(check.tolerance) << ")\n";
    all_pass = all_pass && check.pass;
  };

  out << "model: ligands=" << model.ligand_count << " coupling=" << model.coupling << "\n";
  if (model.ligand_count == 3) {
    out << "closed-form reproduction over [0, " << format_double(opt.tmax) << "], "
        << opt.steps << " points:\n";
    for (const VerificationCheck& check :
         run_closed_form_checks(model, opt.tmax, opt.steps, tolerance)) {
      print_check(check);
    }
  } else {
    out << "closed-form checks skipped: the registered formulas hold for the 3-ligand star "
           "(L=3 only)\n";
  }

  out << "generic invariants:\n";
  for (const VerificationCheck& check :
       run_generic_invariants(model, opt.tmax, 257, seed)) {
    print_check(check);
  }

  if (deep) {
    out << "deep oracle suites:\n";
    const auto print_report = [&](const OracleReport& report) {
      out << (report.pass ? "  [pass] " : "  [FAIL] ") << report.check_name << "  max dev "
          << sci(report.max_deviation) << "  (tol " << sci(report.tolerance) << ", "
          << report.sample_count << " samples)\n";
      all_pass = all_pass && report.pass;
    };
    for (int ligands : {1, 2, 3, 5, 8}) {
      StarModel oracle_model;
      oracle_model.ligand_count = ligands;
      oracle_model.coupling = model.coupling;
      OneParticleAmplitudes central;
      central.b = ComplexVector::Zero(oracle_model.sector_dimension());
      central.b(0) = 1.0;
      std::vector<double> samples(ligands >= 6 ? 17 : 65);
      for (std::size_t k = 0; k < samples.size(); ++k) {
        samples[k] = kDefaultTmax * static_cast<double>(k) / static_cast<double>(samples.size() - 1);
      }
      print_report(oracle_full_vs_sector(oracle_model, central, samples));
    }
    print_report(oracle_concurrence_exhaustive(trials, seed, model.ligand_count));
  }

  out << (all_pass ? "verification: PASS\n" : "verification: FAIL\n");
  return all_pass ? kExitOk : kExitVerificationFailure;
}

void apply_env_limits() {
  if (const char* cap = std::getenv("SPINSTAR_MAX_QUBITS")) {
    int value = 0;
    const auto result = std::from_chars(cap, cap + std::string_view(cap).size(), value);
    if (result.ec == std::errc{} && value >= 2) {
      limits().max_qubits = value;
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  apply_env_limits();

  CLI::App app{"Exact dynamics, pairwise entanglement, and W-state detection for spin-1/2"
               " star networks with isotropic Heisenberg coupling"};
  app.name("spinstar");
  app.require_subcommand(1);

  CommonOptions evolve_opt;
  CLI::App* evolve = app.add_subcommand("evolve", "Sample quantities along a trajectory");
  add_model_options(evolve, evolve_opt);
  add_grid_options(evolve, evolve_opt);
  evolve->add_option("--quantities", evolve_opt.quantities,
                     "Comma-separated column names (see --list-quantities)")
      ->delimiter(',');
  evolve->add_option("--output", evolve_opt.output, "Output path, '-' for stdout");
  evolve->add_option("--format", evolve_opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  evolve->add_flag("--gnuplot", evolve_opt.gnuplot, "Also write a gnuplot script next to the CSV");

  CommonOptions events_opt;
  std::string detector;
  CLI::App* events = app.add_subcommand("events", "Detect characteristic time instants");
  add_model_options(events, events_opt);
  add_grid_options(events, events_opt);
  events->add_option("--detector", detector, "tws, pstws, peaks, crossings or disentangle")
      ->required()
      ->check(CLI::IsMember({"tws", "pstws", "peaks", "crossings", "disentangle"}));
  events->add_option("--quantities", events_opt.quantities,
                     "Columns scanned by the peaks/crossings detectors")
      ->delimiter(',');
  events->add_option("--output", events_opt.output, "Output path, '-' for stdout");

  CommonOptions verify_opt;
  double tolerance = 1e-9;
  bool deep = false;
  unsigned seed = 20240809;
  int trials = 1000;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check the numeric pipeline against the closed-form catalog");
  add_model_options(verify, verify_opt);
  add_grid_options(verify, verify_opt);
  verify->add_option("--tolerance", tolerance, "Acceptance threshold for every formula");
  verify->add_flag("--deep", deep, "Also run the brute-force oracle suites");
  verify->add_option("--seed", seed, "Seed for the randomized checks");
  verify->add_option("--trials", trials, "Trials for the exhaustive concurrence oracle");

  bool list_quantities = false;
  app.add_flag("--list-quantities", list_quantities, "Print the quantity catalog and exit");

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.get_name() << ": " << e.what() << "\n";
    return kExitUsageError;
  }

  if (list_quantities) {
    for (const QuantityInfo& info : quantity_catalog()) {
      out << info.name << "  ["
          << (info.scenario_specific ? to_string(info.scenario) : std::string("any scenario"))
          << "]  " << info.description << "\n";
    }
    return kExitOk;
  }

  try {
    if (evolve->parsed()) {
      return run_evolve(evolve, evolve_opt, out, err);
    }
    if (events->parsed()) {
      return run_events(events, events_opt, detector, out, err);
    }
    if (verify->parsed()) {
      return run_verify(verify, verify_opt, tolerance, deep, seed, trials, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsageError;
}

}  // namespace spinstar::cli
