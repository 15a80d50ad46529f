#include "spinstar/model.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace spinstar {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

// Single Kronecker pass with sigma_alpha/2 on both coupled sites.
ComplexMatrix pair_coupling(Axis axis, int site_a, int site_b, int n_sites) {
  const ComplexMatrix op = spin_half_matrix(axis);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int s = 1; s <= n_sites; ++s) {
    out = tensor_product(out, (s == site_a || s == site_b) ? op : id);
  }
  return out;
}

}  // namespace

void validate(const StarModel& model) {
  if (model.ligand_count < 1) {
    throw std::invalid_argument("star model needs at least one ligand");
  }
  if (!std::isfinite(model.coupling) || model.coupling == 0.0) {
    throw std::invalid_argument("star model coupling must be finite and nonzero");
  }
}

StarModel model_from_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open model config '" + path + "'");
  }
  StarModel model;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "ligand_count") {
        model.ligand_count = std::stoi(value);
      } else if (key == "coupling") {
        model.coupling = std::stod(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": bad entry '" +
                                  stripped + "'");
    }
  }
  validate(model);
  return model;
}

ComplexMatrix spin_half_matrix(Axis axis) {
  ComplexMatrix op(2, 2);
  switch (axis) {
    case Axis::X:
      op << Complex(0.0), Complex(0.5), Complex(0.5), Complex(0.0);
      break;
    case Axis::Y:
      op << Complex(0.0), Complex(0.0, 0.5), Complex(0.0, -0.5), Complex(0.0);
      break;
    case Axis::Z:
      op << Complex(-0.5), Complex(0.0), Complex(0.0), Complex(0.5);
      break;
  }
  return op;
}

ComplexMatrix site_spin_operator(Axis axis, int site, int n_sites) {
  if (site < 1 || site > n_sites) {
    throw std::out_of_range("site_spin_operator: site out of range");
  }
  const ComplexMatrix op = spin_half_matrix(axis);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int s = 1; s <= n_sites; ++s) {
    out = tensor_product(out, s == site ? op : id);
  }
  return out;
}

ComplexMatrix build_full_hamiltonian(const StarModel& model) {
  validate(model);
  const int n = model.sites();
  if (n > limits().max_qubits) {
    throw std::length_error("full Hamiltonian of " + std::to_string(n) +
                            " qubits exceeds the qubit cap of " +
                            std::to_string(limits().max_qubits));
  }
  const std::size_t dim = static_cast<std::size_t>(model.full_dimension());
  if (dim * dim > limits().max_dense_entries) {
    throw std::length_error("full Hamiltonian would hold " + std::to_string(dim * dim) +
                            " entries, above the dense-storage cap");
  }
  ComplexMatrix h = ComplexMatrix::Zero(model.full_dimension(), model.full_dimension());
  for (int ligand_site = 2; ligand_site <= n; ++ligand_site) {
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
      h += model.coupling * pair_coupling(axis, 1, ligand_site, n);
    }
  }
  return h;
}

ComplexMatrix build_sector_hamiltonian(const StarModel& model) {
  validate(model);
  const int L = model.ligand_count;
  const double j = model.coupling;
  ComplexMatrix h = ComplexMatrix::Zero(L + 1, L + 1);
  h(0, 0) = -L * j / 4.0;
  for (int k = 1; k <= L; ++k) {
    h(k, k) = (L - 2) * j / 4.0;
    h(0, k) = j / 2.0;
    h(k, 0) = j / 2.0;
  }
  return h;
}

Eigen::Index one_particle_basis_index(int amplitude_index, int n_sites) {
  if (amplitude_index < 0 || amplitude_index >= n_sites) {
    throw std::out_of_range("one_particle_basis_index: amplitude index out of range");
  }
  return Eigen::Index{1} << (n_sites - 1 - amplitude_index);
}

StateVector embed_one_particle(const OneParticleAmplitudes& amps, const StarModel& model,
                               const Tolerances& tol) {
  validate(model);
  if (amps.b.size() != model.sector_dimension()) {
    throw std::invalid_argument("embed_one_particle: expected " +
                                std::to_string(model.sector_dimension()) + " amplitudes");
  }
  if (std::abs(amps.b.norm() - 1.0) > tol.normalization) {
    throw std::invalid_argument("embed_one_particle: amplitudes are not normalized");
  }
  StateVector state = StateVector::Zero(model.full_dimension());
  for (int k = 0; k < amps.b.size(); ++k) {
    state(one_particle_basis_index(k, model.sites())) = amps.b(k);
  }
  return state;
}

OneParticleAmplitudes project_one_particle(const StateVector& state, const StarModel& model,
                                           double time) {
  validate(model);
  if (state.size() != model.full_dimension()) {
    throw std::invalid_argument("project_one_particle: state dimension mismatch");
  }
  OneParticleAmplitudes amps;
  amps.b.resize(model.sector_dimension());
  for (int k = 0; k < amps.b.size(); ++k) {
    amps.b(k) = state(one_particle_basis_index(k, model.sites()));
  }
  amps.time = time;
  return amps;
}

double one_particle_leakage(const StateVector& state, const StarModel& model) {
  const OneParticleAmplitudes amps = project_one_particle(state, model);
  const double total = state.squaredNorm();
  const double inside = amps.b.squaredNorm();
  return std::sqrt(std::max(0.0, total - inside));
}

}  // namespace spinstar
