#include "spinstar/analysis.hpp"

#include "spinstar/entanglement.hpp"
#include "spinstar/evolution.hpp"
#include "spinstar/linalg.hpp"
#include "spinstar/observables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace spinstar {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double TimeSeries::step() const {
  if (grid.size() < 2) {
    throw std::logic_error("TimeSeries::step: grid holds fewer than two points");
  }
  return (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
}

bool TimeSeries::has(std::string_view name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

const std::vector<double>& TimeSeries::column(std::string_view name) const {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return columns[k];
  }
  throw std::invalid_argument("TimeSeries: no column named '" + std::string(name) + "'");
}

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::Cops: return "cops";
    case Scenario::Lops: return "lops";
    case Scenario::Custom: return "custom-amplitudes";
  }
  return "unknown";
}

Scenario scenario_from_string(std::string_view name) {
  if (name == "cops") return Scenario::Cops;
  if (name == "lops") return Scenario::Lops;
  if (name == "custom-amplitudes" || name == "custom") return Scenario::Custom;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

OneParticleAmplitudes initial_amplitudes(const ScanConfig& config) {
  validate(config.model);
  const Eigen::Index d = config.model.sector_dimension();
  OneParticleAmplitudes amps;
  amps.b = ComplexVector::Zero(d);
  switch (config.scenario) {
    case Scenario::Cops:
      amps.b(0) = 1.0;
      break;
    case Scenario::Lops:
      amps.b(d - 1) = 1.0;  // last ligand carries the excitation
      break;
    case Scenario::Custom: {
      if (config.custom_amplitudes.size() != d) {
        throw std::invalid_argument("custom scenario expects " + std::to_string(d) +
                                    " amplitudes");
      }
      const double norm = config.custom_amplitudes.norm();
      if (!std::isfinite(norm) || norm == 0.0) {
        throw std::invalid_argument("custom amplitudes must normalize");
      }
      amps.b = config.custom_amplitudes / norm;
      break;
    }
  }
  return amps;
}

// ---------------------------------------------------------------------------
// Quantity catalog and scan
// ---------------------------------------------------------------------------

namespace {

struct QuantitySpec {
  const char* name;
  Scenario scenario;
  bool scenario_specific;
  bool needs_concurrence;
  const char* description;
};

constexpr QuantitySpec kQuantitySpecs[] = {
    {"c_ucp_l", Scenario::Cops, true, true, "concurrence, evolved central qubit vs a ligand"},
    {"c_l_l", Scenario::Cops, true, true, "concurrence, ligand vs ligand"},
    {"p_ucp", Scenario::Cops, true, false, "probability of the central one-particle state"},
    {"p_l", Scenario::Cops, true, false, "probability of one ligand one-particle state"},
    {"sz_ucp", Scenario::Cops, true, false, "<S^z> of the evolved central qubit"},
    {"sz_l", Scenario::Cops, true, false, "<S^z> of a ligand"},
    {"szsz_ucp_l", Scenario::Cops, true, false, "<S^z S^z>, central vs ligand"},
    {"szsz_l_l", Scenario::Cops, true, false, "<S^z S^z>, ligand vs ligand"},
    {"sxsx_ucp_l", Scenario::Cops, true, false, "<S^x S^x>, central vs ligand"},
    {"sxsx_l_l", Scenario::Cops, true, false, "<S^x S^x>, ligand vs ligand"},
    {"c_cp_ul", Scenario::Lops, true, true, "concurrence, central qubit vs evolved ligand"},
    {"c_cp_nul", Scenario::Lops, true, true, "concurrence, central qubit vs unevolved ligand"},
    {"c_ul_nul", Scenario::Lops, true, true, "concurrence, evolved vs unevolved ligand"},
    {"c_nul_nul", Scenario::Lops, true, true, "concurrence, two unevolved ligands"},
    {"p_cp", Scenario::Lops, true, false, "probability of the central one-particle state"},
    {"p_ul", Scenario::Lops, true, false, "probability of the evolved ligand state"},
    {"p_nul", Scenario::Lops, true, false, "probability of an unevolved ligand state"},
    {"sz_cp", Scenario::Lops, true, false, "<S^z> of the central qubit"},
    {"sz_ul", Scenario::Lops, true, false, "<S^z> of the evolved ligand"},
    {"sz_nul", Scenario::Lops, true, false, "<S^z> of an unevolved ligand"},
    {"szsz_cp_ul", Scenario::Lops, true, false, "<S^z S^z>, central vs evolved ligand"},
    {"szsz_cp_nul", Scenario::Lops, true, false, "<S^z S^z>, central vs unevolved ligand"},
    {"szsz_ul_nul", Scenario::Lops, true, false, "<S^z S^z>, evolved vs unevolved ligand"},
    {"szsz_nul_nul", Scenario::Lops, true, false, "<S^z S^z>, two unevolved ligands"},
    {"sxsx_cp_ul", Scenario::Lops, true, false, "<S^x S^x>, central vs evolved ligand"},
    {"sxsx_cp_nul", Scenario::Lops, true, false, "<S^x S^x>, central vs unevolved ligand"},
    {"sxsx_ul_nul", Scenario::Lops, true, false, "<S^x S^x>, evolved vs unevolved ligand"},
    {"sxsx_nul_nul", Scenario::Lops, true, false, "<S^x S^x>, two unevolved ligands"},
    {"sum_c", Scenario::Custom, false, true, "sum of all pairwise concurrences"},
    {"spread", Scenario::Custom, false, true, "max - min over all pairwise concurrences"},
    {"w_deviation", Scenario::Custom, false, true, "max |C_ij - 2/N| over all pairs"},
    {"w_fidelity", Scenario::Custom, false, false, "best-phase overlap squared with the W state"},
    {"m_total", Scenario::Custom, false, false, "total magnetization sum_i <S^z_i>"},
    {"norm", Scenario::Custom, false, false, "state norm"},
};

struct Frame {
  double t = 0.0;
  const StateVector* state = nullptr;
  const OneParticleAmplitudes* amps = nullptr;
  const RealMatrix* concurrences = nullptr;
};

struct ColumnPlan {
  std::string name;
  bool needs_concurrence = false;
  std::function<double(const Frame&)> eval;
};

const QuantitySpec* find_spec(std::string_view name) {
  for (const QuantitySpec& spec : kQuantitySpecs) {
    if (name == spec.name) return &spec;
  }
  return nullptr;
}

// Representative sites of the pair classes. The evolved ligand is the last
// site; the first two ligands stand in for the unevolved pair.
std::pair<int, int> class_pair_sites(std::string_view tail, const StarModel& model) {
  const int last = model.sites();
  if (tail == "ucp_l" || tail == "cp_nul") return {1, 2};
  if (tail == "l_l" || tail == "nul_nul") return {2, 3};
  if (tail == "cp_ul") return {1, last};
  if (tail == "ul_nul") return {last, 2};
  throw std::invalid_argument("unknown pair class '" + std::string(tail) + "'");
}

int class_site(std::string_view tail, const StarModel& model) {
  if (tail == "ucp" || tail == "cp") return 1;
  if (tail == "l" || tail == "nul") return 2;
  if (tail == "ul") return model.sites();
  throw std::invalid_argument("unknown site class '" + std::string(tail) + "'");
}

double matrix_sum(const RealMatrix& c) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < c.cols(); ++j) sum += c(i, j);
  }
  return sum;
}

double matrix_spread(const RealMatrix& c) {
  double lo = c(0, 1);
  double hi = c(0, 1);
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < c.cols(); ++j) {
      lo = std::min(lo, c(i, j));
      hi = std::max(hi, c(i, j));
    }
  }
  return hi - lo;
}

double matrix_w_deviation(const RealMatrix& c) {
  const double target = 2.0 / static_cast<double>(c.rows());
  double dev = 0.0;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < c.cols(); ++j) {
      dev = std::max(dev, std::abs(c(i, j) - target));
    }
  }
  return dev;
}

ColumnPlan make_plan(const std::string& name, const StarModel& model) {
  const QuantitySpec* spec = find_spec(name);
  if (spec == nullptr) {
    throw std::invalid_argument("unknown quantity '" + name + "'");
  }
  ColumnPlan plan;
  plan.name = name;
  plan.needs_concurrence = spec->needs_concurrence;

  if (name.starts_with("c_")) {
    const auto [a, b] = class_pair_sites(name.substr(2), model);
    plan.eval = [a, b](const Frame& f) { return (*f.concurrences)(a - 1, b - 1); };
  } else if (name.starts_with("p_")) {
    const int site = class_site(name.substr(2), model);
    plan.eval = [site](const Frame& f) { return std::norm(f.amps->b(site - 1)); };
  } else if (name.starts_with("sz_")) {
    const int site = class_site(name.substr(3), model);
    plan.eval = [site](const Frame& f) { return spin_expectation(*f.state, site, Axis::Z); };
  } else if (name.starts_with("szsz_")) {
    const auto [a, b] = class_pair_sites(name.substr(5), model);
    plan.eval = [a, b](const Frame& f) { return two_point_correlator(*f.state, a, b, Axis::Z); };
  } else if (name.starts_with("sxsx_")) {
    const auto [a, b] = class_pair_sites(name.substr(5), model);
    plan.eval = [a, b](const Frame& f) { return two_point_correlator(*f.state, a, b, Axis::X); };
  } else if (name == "sum_c") {
    plan.eval = [](const Frame& f) { return matrix_sum(*f.concurrences); };
  } else if (name == "spread") {
    plan.eval = [](const Frame& f) { return matrix_spread(*f.concurrences); };
  } else if (name == "w_deviation") {
    plan.eval = [](const Frame& f) { return matrix_w_deviation(*f.concurrences); };
  } else if (name == "w_fidelity") {
    plan.eval = [](const Frame& f) { return w_state_fidelity(*f.amps); };
  } else if (name == "m_total") {
    plan.eval = [](const Frame& f) { return total_magnetization(*f.state); };
  } else if (name == "norm") {
    plan.eval = [](const Frame& f) { return f.state->norm(); };
  } else {
    throw std::invalid_argument("unknown quantity '" + name + "'");
  }
  return plan;
}

void check_scan_config(const ScanConfig& config) {
  validate(config.model);
  if (!(config.t_max > 0.0) || !std::isfinite(config.t_max)) {
    throw std::invalid_argument("scan: t_max must be positive and finite");
  }
  if (config.steps < 2) {
    throw std::invalid_argument("scan: need at least 2 grid points");
  }
}

}  // namespace

const std::vector<QuantityInfo>& quantity_catalog() {
  static const std::vector<QuantityInfo> catalog = [] {
    std::vector<QuantityInfo> entries;
    for (const QuantitySpec& spec : kQuantitySpecs) {
      entries.push_back({spec.name, spec.scenario, spec.scenario_specific, spec.description});
    }
    return entries;
  }();
  return catalog;
}

bool quantity_known(std::string_view name) { return find_spec(name) != nullptr; }

bool quantity_available(std::string_view name, Scenario scenario) {
  const QuantitySpec* spec = find_spec(name);
  if (spec == nullptr) return false;
  return !spec->scenario_specific || spec->scenario == scenario;
}

TimeSeries scan(const ScanConfig& config) {
  check_scan_config(config);
  if (config.quantities.empty()) {
    throw std::invalid_argument("scan: no quantities selected");
  }

  std::vector<ColumnPlan> plans;
  bool need_concurrence = false;
  for (const std::string& name : config.quantities) {
    const QuantitySpec* spec = find_spec(name);
    if (spec == nullptr) {
      throw std::invalid_argument("unknown quantity '" + name + "'");
    }
    if (spec->scenario_specific) {
      if (spec->scenario != config.scenario) {
        throw std::invalid_argument("quantity '" + name + "' belongs to the " +
                                    to_string(spec->scenario) + " scenario");
      }
      if (config.model.ligand_count != 3) {
        throw std::invalid_argument("quantity '" + name + "' requires the 3-ligand star");
      }
    }
    plans.push_back(make_plan(name, config.model));
    need_concurrence = need_concurrence || plans.back().needs_concurrence;
  }

  const OneParticleAmplitudes amps0 = initial_amplitudes(config);
  const Propagator propagator(build_full_hamiltonian(config.model));
  const StateVector psi0 = embed_one_particle(amps0, config.model);

  TimeSeries series;
  series.grid.resize(config.steps);
  for (const ColumnPlan& plan : plans) {
    series.names.push_back(plan.name);
    series.columns.emplace_back(config.steps);
  }

  for (int i = 0; i < config.steps; ++i) {
    const double t = config.t_max * static_cast<double>(i) / static_cast<double>(config.steps - 1);
    series.grid[i] = t;
    const StateVector psi = propagator.propagate(psi0, t);
    const OneParticleAmplitudes amps = project_one_particle(psi, config.model, t);
    RealMatrix concurrences;
    if (need_concurrence) {
      concurrences = pairwise_concurrence_matrix(psi);
    }
    Frame frame{t, &psi, &amps, need_concurrence ? &concurrences : nullptr};
    for (std::size_t k = 0; k < plans.size(); ++k) {
      series.columns[k][i] = plans[k].eval(frame);
    }
  }
  return series;
}

// ---------------------------------------------------------------------------
// Closed-form catalog (3-ligand star, J = 1)
// ---------------------------------------------------------------------------

namespace forms {

namespace {
double sq(double x) { return x * x; }
double lops_mod(int k, double t) { return std::abs(lops_amplitudes_closed_form(t, 3).b(k)); }
}  // namespace

double c_ucp_l(double t) { return 0.5 * std::sqrt(sq(sq(std::sin(t))) + sq(std::sin(2 * t))); }
double c_l_l(double t) { return 0.5 * sq(std::sin(t)); }
double p_ucp(double t) { return (3 * std::cos(2 * t) + 5) / 8.0; }
double p_l(double t) { return sq(std::sin(t)) / 4.0; }
double sz_ucp(double t) { return (3 * std::cos(2 * t) + 1) / 8.0; }
double sz_l(double t) { return -(std::cos(2 * t) + 3) / 8.0; }
double szsz_ucp_l(double t) { return -sq(std::cos(t)) / 4.0; }
double szsz_l_l(double t) { return sq(std::cos(t)) / 4.0; }
double sxsx_ucp_l(double t) { return -sq(std::sin(t)) / 8.0; }
double sxsx_l_l(double t) { return sq(std::sin(t)) / 8.0; }

double c_cp_ul(double t) { return 2.0 * lops_mod(0, t) * lops_mod(3, t); }
double c_cp_nul(double t) { return 2.0 * lops_mod(0, t) * lops_mod(1, t); }
double c_ul_nul(double t) { return 2.0 * lops_mod(3, t) * lops_mod(1, t); }
double c_nul_nul(double t) { return 2.0 * lops_mod(1, t) * lops_mod(2, t); }
double p_cp(double t) { return sq(std::sin(t)) / 4.0; }
double p_ul(double t) {
  return (24 * std::cos(t / 2) + 8 * std::cos(1.5 * t) + 3 * std::cos(2 * t) + 37) / 72.0;
}
double p_nul(double t) {
  return (2.0 / 9.0) * sq(sq(std::sin(t / 4))) * (8 * std::cos(t / 2) + 3 * std::cos(t) + 7);
}
double sz_cp(double t) { return -(std::cos(2 * t) + 3) / 8.0; }
double sz_ul(double t) {
  return (24 * std::cos(t / 2) + 8 * std::cos(1.5 * t) + 3 * std::cos(2 * t) + 1) / 72.0;
}
double sz_nul(double t) {
  return (-12 * std::cos(t / 2) - 4 * std::cos(1.5 * t) + 3 * std::cos(2 * t) - 23) / 72.0;
}
double szsz_cp_ul(double t) {
  return (-12 * std::cos(t / 2) - 4 * std::cos(1.5 * t) + 3 * std::cos(2 * t) - 5) / 72.0;
}
double szsz_cp_nul(double t) {
  return (6 * std::cos(t / 2) + 2 * std::cos(1.5 * t) + 3 * std::cos(2 * t) + 7) / 72.0;
}
double szsz_ul_nul(double t) { return -szsz_cp_nul(t); }
double szsz_nul_nul(double t) { return -szsz_cp_ul(t); }
double sxsx_cp_ul(double t) {
  return sq(std::sin(t / 2)) * (4 * std::cos(t / 2) + std::cos(t) + 1) / 12.0;
}
double sxsx_cp_nul(double t) {
  return -sq(std::sin(t / 4)) * std::sin(t / 2) * std::sin(t) / 6.0;
}
double sxsx_ul_nul(double t) {
  return (6 * std::cos(t / 2) + 2 * std::cos(1.5 * t) + 3 * std::cos(2 * t) - 11) / 144.0;
}
// Equals p_nul/2 through <Sx_i Sx_j> = Re(b_i* b_j)/2 with b_i = b_j.
double sxsx_nul_nul(double t) {
  return sq(sq(std::sin(t / 4))) * (8 * std::cos(t / 2) + 3 * std::cos(t) + 7) / 9.0;
}

}  // namespace forms

const std::vector<ClosedForm>& closed_form_catalog() {
  static const std::vector<ClosedForm> catalog = {
      {"c_ucp_l", Scenario::Cops, &forms::c_ucp_l},
      {"c_l_l", Scenario::Cops, &forms::c_l_l},
      {"p_ucp", Scenario::Cops, &forms::p_ucp},
      {"p_l", Scenario::Cops, &forms::p_l},
      {"sz_ucp", Scenario::Cops, &forms::sz_ucp},
      {"sz_l", Scenario::Cops, &forms::sz_l},
      {"szsz_ucp_l", Scenario::Cops, &forms::szsz_ucp_l},
      {"szsz_l_l", Scenario::Cops, &forms::szsz_l_l},
      {"sxsx_ucp_l", Scenario::Cops, &forms::sxsx_ucp_l},
      {"sxsx_l_l", Scenario::Cops, &forms::sxsx_l_l},
      {"c_cp_ul", Scenario::Lops, &forms::c_cp_ul},
      {"c_cp_nul", Scenario::Lops, &forms::c_cp_nul},
      {"c_ul_nul", Scenario::Lops, &forms::c_ul_nul},
      {"c_nul_nul", Scenario::Lops, &forms::c_nul_nul},
      {"p_cp", Scenario::Lops, &forms::p_cp},
      {"p_ul", Scenario::Lops, &forms::p_ul},
      {"p_nul", Scenario::Lops, &forms::p_nul},
      {"sz_cp", Scenario::Lops, &forms::sz_cp},
      {"sz_ul", Scenario::Lops, &forms::sz_ul},
      {"sz_nul", Scenario::Lops, &forms::sz_nul},
      {"szsz_cp_ul", Scenario::Lops, &forms::szsz_cp_ul},
      {"szsz_cp_nul", Scenario::Lops, &forms::szsz_cp_nul},
      {"szsz_ul_nul", Scenario::Lops, &forms::szsz_ul_nul},
      {"szsz_nul_nul", Scenario::Lops, &forms::szsz_nul_nul},
      {"sxsx_cp_ul", Scenario::Lops, &forms::sxsx_cp_ul},
      {"sxsx_cp_nul", Scenario::Lops, &forms::sxsx_cp_nul},
      {"sxsx_ul_nul", Scenario::Lops, &forms::sxsx_ul_nul},
      {"sxsx_nul_nul", Scenario::Lops, &forms::sxsx_nul_nul},
  };
  return catalog;
}

double closed_form(std::string_view quantity_id, double t) {
  for (const ClosedForm& form : closed_form_catalog()) {
    if (form.id == quantity_id) return form.eval(t);
  }
  throw std::invalid_argument("no closed form registered for '" + std::string(quantity_id) + "'");
}

// ---------------------------------------------------------------------------
// Characteristic time instants
// ---------------------------------------------------------------------------

namespace {

void check_n_max(int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
}

}  // namespace

std::vector<double> tws_times(int n_max) {
  check_n_max(n_max);
  std::vector<double> times(n_max);
  for (int n = 1; n <= n_max; ++n) {
    times[n - 1] = kPi * (2 * n - 1) / 2.0;
  }
  return times;
}

std::vector<double> pstws_times(int n_max) {
  check_n_max(n_max);
  std::vector<double> times(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    times[n - 1] = kPi * (2 * n - (9.0 + 5.0 * sign) / 9.0);
  }
  return times;
}

std::vector<double> approx_cops_peak_times(int n_max) {
  check_n_max(n_max);
  std::vector<double> times(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double sign = n % 2 == 0 ? -1.0 : 1.0;
    times[n - 1] = kPi * (2 * n - 1) / 4.0 + 7.0 * kPi * sign / 132.0;
  }
  return times;
}

// ---------------------------------------------------------------------------
// Detectors
// ---------------------------------------------------------------------------

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Tws: return "tws";
    case EventKind::Pstws: return "pstws";
    case EventKind::Peak: return "peak";
    case EventKind::Crossing: return "crossing";
    case EventKind::Disentangle: return "disentangle";
  }
  return "unknown";
}

namespace {

// Parabolic vertex through three equally spaced samples around index i.
// Returns {t, value}; falls back to the grid point when the curvature
// degenerates.
std::pair<double, double> refine_vertex(const std::vector<double>& grid,
                                        const std::vector<double>& column, std::size_t i) {
  const double den = column[i - 1] - 2.0 * column[i] + column[i + 1];
  if (den == 0.0) return {grid[i], column[i]};
  const double h = 0.5 * (grid[i + 1] - grid[i - 1]);
  const double offset = std::clamp(0.5 * (column[i - 1] - column[i + 1]) / den, -1.0, 1.0);
  const double value = column[i] - 0.25 * (column[i - 1] - column[i + 1]) * offset;
  return {grid[i] + offset * h, value};
}

// Golden-section minimization; f is assumed unimodal on [lo, hi].
std::pair<double, double> golden_minimize(const std::function<double(double)>& f, double lo,
                                          double hi, int evaluations = 90) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int k = 0; k < evaluations; ++k) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  const double t = 0.5 * (a + b);
  return {t, f(t)};
}

double bisect_zero(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((flo <= 0.0) == (fmid <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EventList find_peaks(const std::vector<double>& grid, const std::vector<double>& column,
                     bool refine) {
  if (grid.size() != column.size()) {
    throw std::invalid_argument("find_peaks: grid and column lengths differ");
  }
  if (grid.size() < 3) {
    throw std::invalid_argument("find_peaks: need at least 3 grid points");
  }
  EventList out;
  for (std::size_t i = 1; i + 1 < column.size(); ++i) {
    if (!(column[i] > column[i - 1] && column[i] > column[i + 1])) continue;
    double t = grid[i];
    double value = column[i];
    if (refine) {
      std::tie(t, value) = refine_vertex(grid, column, i);
    }
    out.events.push_back({t, EventKind::Peak, "", {{"value", value}}});
  }
  return out;
}

EventList find_crossings(const std::vector<double>& grid, const std::vector<double>& a,
                         const std::vector<double>& b, bool refine) {
  if (grid.size() != a.size() || a.size() != b.size()) {
    throw std::invalid_argument("find_crossings: column lengths differ");
  }
  if (grid.size() < 2) {
    throw std::invalid_argument("find_crossings: need at least 2 grid points");
  }

  double scale = 1.0;
  double max_diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    max_diff = std::max(max_diff, std::abs(a[i] - b[i]));
  }
  EventList out;
  if (max_diff <= 1e-14 * scale) {
    out.degenerate_input = true;  // columns coincide, crossings are not isolated
    return out;
  }

  int last_sign = 0;
  std::size_t last_idx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) {
      const double d0 = a[last_idx] - b[last_idx];
      const double theta = refine ? d0 / (d0 - d) : (std::abs(d0) <= std::abs(d) ? 0.0 : 1.0);
      const double t = grid[last_idx] + theta * (grid[i] - grid[last_idx]);
      const double va = a[last_idx] + theta * (a[i] - a[last_idx]);
      const double vb = b[last_idx] + theta * (b[i] - b[last_idx]);
      out.events.push_back({t, EventKind::Crossing, "", {{"value", 0.5 * (va + vb)}}});
    }
    last_sign = sign;
    last_idx = i;
  }
  return out;
}

double find_zero_offsets(std::string_view quantity_id, double center, double window,
                         double near_zero_tol) {
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw std::invalid_argument("find_zero_offsets: window must be positive");
  }
  const ClosedForm* form = nullptr;
  for (const ClosedForm& candidate : closed_form_catalog()) {
    if (candidate.id == quantity_id) {
      form = &candidate;
      break;
    }
  }
  if (form == nullptr) {
    throw std::invalid_argument("find_zero_offsets: no closed form for '" +
                                std::string(quantity_id) + "'");
  }
  const auto f = [form](double t) { return form->eval(t); };

  const int n = 4001;
  std::vector<double> ts(n);
  std::vector<double> vs(n);
  for (int i = 0; i < n; ++i) {
    ts[i] = center - window + 2.0 * window * i / (n - 1);
    vs[i] = f(ts[i]);
  }

  struct Candidate {
    double t;
    double abs_value;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i + 1 < n; ++i) {
    if (vs[i] == 0.0) {
      candidates.push_back({ts[i], 0.0});
    } else if (vs[i] * vs[i + 1] < 0.0) {
      candidates.push_back({bisect_zero(f, ts[i], ts[i + 1]), 0.0});
    }
  }
  for (int i = 1; i + 1 < n; ++i) {
    const bool local_min = std::abs(vs[i]) <= std::abs(vs[i - 1]) && std::abs(vs[i]) < std::abs(vs[i + 1]);
    const bool same_sign = vs[i - 1] * vs[i + 1] > 0.0;
    if (!local_min || !same_sign) continue;
    const auto [t_min, v_min] =
        golden_minimize([&f](double t) { return std::abs(f(t)); }, ts[i - 1], ts[i + 1]);
    if (v_min <= near_zero_tol) {
      candidates.push_back({t_min, v_min});
    }
  }
  if (candidates.empty()) {
    throw std::runtime_error("find_zero_offsets: no zero of '" + std::string(quantity_id) +
                             "' within the window");
  }
  const auto nearest = std::min_element(candidates.begin(), candidates.end(),
                                        [center](const Candidate& x, const Candidate& y) {
                                          return std::abs(x.t - center) < std::abs(y.t - center);
                                        });
  return std::abs(nearest->t - center);
}

// ---------------------------------------------------------------------------
// Trajectory event detectors
// ---------------------------------------------------------------------------

namespace {

struct Trajectory {
  ScanConfig config;
  StarModel model;
  Propagator propagator;
  StateVector psi0;
  std::vector<double> grid;
  std::vector<std::vector<double>> pair_columns;  // one per site pair, i < j
  std::vector<std::pair<int, int>> pairs;         // 1-based site pairs
  std::vector<double> spread;

  explicit Trajectory(const ScanConfig& cfg)
      : config(cfg),
        model(cfg.model),
        propagator(build_full_hamiltonian(cfg.model)),
        psi0(embed_one_particle(initial_amplitudes(cfg), cfg.model)) {
    const int n = model.sites();
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    }
    pair_columns.assign(pairs.size(), std::vector<double>(config.steps));
    spread.resize(config.steps);
    grid.resize(config.steps);
    for (int k = 0; k < config.steps; ++k) {
      const double t =
          config.t_max * static_cast<double>(k) / static_cast<double>(config.steps - 1);
      grid[k] = t;
      const RealMatrix c = pairwise_concurrence_matrix(propagator.propagate(psi0, t));
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        pair_columns[p][k] = c(pairs[p].first - 1, pairs[p].second - 1);
      }
      spread[k] = matrix_spread(c);
    }
  }

  WStateVerdict verdict_at(double t, double tol) const {
    return detect_w_state(propagator.propagate(psi0, t), t, tol);
  }

  double max_central_ligand_concurrence(double t) const {
    const RealMatrix c = pairwise_concurrence_matrix(propagator.propagate(psi0, t));
    double worst = 0.0;
    for (int site = 2; site <= model.sites(); ++site) {
      worst = std::max(worst, c(0, site - 1));
    }
    return worst;
  }
};

Event w_event(EventKind kind, double t, const WStateVerdict& verdict) {
  return {t,
          kind,
          "",
          {{"spread", verdict.spread},
           {"deviation", verdict.deviation},
           {"fidelity", verdict.fidelity}}};
}

}  // namespace

EventList w_state_events(const ScanConfig& config, double exact_tol, double pseudo_tol) {
  check_scan_config(config);
  if (!(exact_tol > 0.0) || !(pseudo_tol > exact_tol)) {
    throw std::invalid_argument("w_state_events: need 0 < exact_tol < pseudo_tol");
  }
  const Trajectory traj(config);
  EventList out;

  // Exact W instants: refined local minima of the spread whose re-evaluated
  // verdict passes at exact_tol.
  for (std::size_t i = 1; i + 1 < traj.spread.size(); ++i) {
    if (!(traj.spread[i] < traj.spread[i - 1] && traj.spread[i] < traj.spread[i + 1])) continue;
    const auto [t_refined, ignored] = refine_vertex(traj.grid, traj.spread, i);
    const WStateVerdict verdict = traj.verdict_at(t_refined, exact_tol);
    if (verdict.is_w_state) {
      out.events.push_back(w_event(EventKind::Tws, t_refined, verdict));
    }
  }

  // Pseudo-W instants: clusters of near-coincident crossings between distinct
  // concurrence columns whose spread stays inside the pseudo window.
  std::vector<double> crossing_times;
  for (std::size_t p = 0; p < traj.pair_columns.size(); ++p) {
    for (std::size_t q = p + 1; q < traj.pair_columns.size(); ++q) {
      const EventList crossings =
          find_crossings(traj.grid, traj.pair_columns[p], traj.pair_columns[q], true);
      if (crossings.degenerate_input) continue;
      for (const Event& event : crossings.events) crossing_times.push_back(event.t);
    }
  }
  std::sort(crossing_times.begin(), crossing_times.end());
  constexpr double kClusterGap = 0.1;
  std::size_t begin = 0;
  while (begin < crossing_times.size()) {
    std::size_t end = begin + 1;
    while (end < crossing_times.size() && crossing_times[end] - crossing_times[end - 1] < kClusterGap) {
      ++end;
    }
    double mean = 0.0;
    for (std::size_t k = begin; k < end; ++k) mean += crossing_times[k];
    mean /= static_cast<double>(end - begin);
    const WStateVerdict verdict = traj.verdict_at(mean, exact_tol);
    if (!verdict.is_w_state && verdict.spread >= exact_tol && verdict.spread < pseudo_tol) {
      out.events.push_back(w_event(EventKind::Pstws, mean, verdict));
    }
    begin = end;
  }

  std::sort(out.events.begin(), out.events.end(),
            [](const Event& x, const Event& y) { return x.t < y.t; });
  return out;
}

EventList disentangle_events(const ScanConfig& config, double tol) {
  check_scan_config(config);
  if (!(tol > 0.0)) {
    throw std::invalid_argument("disentangle_events: tolerance must be positive");
  }
  const Trajectory traj(config);

  // Column of the largest central-ligand concurrence.
  std::vector<double> central(traj.grid.size(), 0.0);
  for (std::size_t p = 0; p < traj.pairs.size(); ++p) {
    if (traj.pairs[p].first != 1) continue;
    for (std::size_t k = 0; k < central.size(); ++k) {
      central[k] = std::max(central[k], traj.pair_columns[p][k]);
    }
  }

  EventList out;
  for (std::size_t i = 1; i + 1 < central.size(); ++i) {
    if (!(central[i] < central[i - 1] && central[i] < central[i + 1])) continue;
    // Golden section instead of a parabola: the dips are V-shaped.
    const auto [t_refined, value] = golden_minimize(
        [&traj](double t) { return traj.max_central_ligand_concurrence(t); },
        traj.grid[i - 1], traj.grid[i + 1]);
    if (value < tol) {
      out.events.push_back({t_refined,
                            EventKind::Disentangle,
                            "",
                            {{"max_central_ligand_concurrence", value}}});
    }
  }
  return out;
}

}  // namespace spinstar
