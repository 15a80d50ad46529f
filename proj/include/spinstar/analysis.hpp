#pragma once

#include "spinstar/model.hpp"
#include "spinstar/types.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace spinstar {

// Sampled trajectory of named scalar quantities on a uniform time grid.
struct TimeSeries {
  std::vector<double> grid;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  double step() const;
  bool has(std::string_view name) const;
  const std::vector<double>& column(std::string_view name) const;
};

enum class Scenario { Cops, Lops, Custom };

std::string to_string(Scenario scenario);
Scenario scenario_from_string(std::string_view name);

struct ScanConfig {
  StarModel model{};
  Scenario scenario = Scenario::Cops;
  ComplexVector custom_amplitudes{};  // initial amplitudes for Scenario::Custom
  double t_max = 0.0;
  int steps = 0;
  std::vector<std::string> quantities{};
};

// Initial one-particle amplitudes of a scenario: the central excitation for
// Cops, the last ligand for Lops, custom_amplitudes otherwise.
OneParticleAmplitudes initial_amplitudes(const ScanConfig& config);

// Samples the selected quantities along the trajectory. Concurrence columns
// run the full pipeline (build H, eigendecompose, propagate, partial trace,
// Wootters); expectation and correlator columns apply operators in the full
// space.
TimeSeries scan(const ScanConfig& config);

struct QuantityInfo {
  std::string name;
  Scenario scenario;  // Scenario::Custom marks scenario-independent quantities
  bool scenario_specific;
  std::string description;
};

// The documented quantity catalog backing scan() and the CLI.
const std::vector<QuantityInfo>& quantity_catalog();
bool quantity_known(std::string_view name);
bool quantity_available(std::string_view name, Scenario scenario);

struct ClosedForm {
  std::string id;        // matches the scan column of the same name
  Scenario scenario;     // trajectory the formula describes
  double (*eval)(double t);
};

// Reference formulas for the 3-ligand star at J = 1, one per analytic result
// carried by the trajectory columns.
const std::vector<ClosedForm>& closed_form_catalog();

// Evaluates a registered formula; throws std::invalid_argument on an unknown
// id.
double closed_form(std::string_view quantity_id, double t);

// W-state instants of the central-excitation trajectory: pi*(2n-1)/2.
std::vector<double> tws_times(int n_max);

// Pseudo-W-state instants of a ligand-excitation trajectory:
// pi*(2n - (9 + 5*(-1)^n)/9).
std::vector<double> pstws_times(int n_max);

// Approximate peak instants of the central-ligand concurrence:
// pi*(2n-1)/4 + 7*pi*(-1)^(n+1)/132. Documented as approximate; the exact
// first peak sits at arcsin(sqrt(2/3)).
std::vector<double> approx_cops_peak_times(int n_max);

enum class EventKind { Tws, Pstws, Peak, Crossing, Disentangle };

std::string to_string(EventKind kind);

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::Peak;
  std::string label;
  std::map<std::string, double> payload;
};

struct EventList {
  std::vector<Event> events;         // sorted by time
  bool degenerate_input = false;     // crossing inputs coincide everywhere
};

// Interior local maxima by 3-point test; with refine the vertex is polished
// by parabolic interpolation. Payload carries the peak value.
EventList find_peaks(const std::vector<double>& grid, const std::vector<double>& column,
                     bool refine = true);

// Sign changes of a - b, linearly refined; payload carries the common value.
// Identical columns are flagged degenerate and produce no events.
EventList find_crossings(const std::vector<double>& grid, const std::vector<double>& a,
                         const std::vector<double>& b, bool refine = true);

// Distance from center to the nearest zero of the named closed-form quantity
// within [center - window, center + window]. Tangential near-zeros (local
// minima of |f| not exceeding near_zero_tol) count as zeros; exact sign
// changes are refined by bisection. Throws std::runtime_error when the window
// holds no zero.
double find_zero_offsets(std::string_view quantity_id, double center, double window,
                         double near_zero_tol = 0.02);

// W-state and pseudo-W-state instants of a trajectory. TWS events come from
// refined local minima of the concurrence spread whose re-evaluated verdict
// passes at exact_tol; PSTWS events come from clusters of near-coincident
// crossings between pairwise-concurrence columns whose spread stays below
// pseudo_tol without passing the exact test.
EventList w_state_events(const ScanConfig& config,
                         double exact_tol = default_tolerances().w_state_exact,
                         double pseudo_tol = default_tolerances().w_state_pseudo);

// Instants at which the central qubit disentangles from every ligand
// (all central-ligand concurrences below tol after golden-section
// refinement).
EventList disentangle_events(const ScanConfig& config, double tol = 1e-9);

}  // namespace spinstar
