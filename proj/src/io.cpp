#include "ataheat/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace ataheat::io {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw std::runtime_error("io: cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("io: double formatting failed");
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const DiagonalPauliSum& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mask, coeff] : p.terms) {
    terms.push_back(nlohmann::json::array({mask, coeff}));
  }
  return nlohmann::json{{"n", p.n}, {"terms", std::move(terms)}};
}

DiagonalPauliSum pauli_sum_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms")) {
    throw std::invalid_argument("pauli_sum_from_json: expected {\"n\", \"terms\"}");
  }
  DiagonalPauliSum p(j.at("n").get<int>());
  for (const auto& term : j.at("terms")) {
    if (!term.is_array() || term.size() != 2) {
      throw std::invalid_argument("pauli_sum_from_json: each term must be [mask, coeff]");
    }
    p.add_term(term.at(0).get<std::uint64_t>(), term.at(1).get<double>());
  }
  return p;
}

nlohmann::json to_json(const AnsatzTree& tree) {
  nlohmann::json alphas = nlohmann::json::array();
  for (const auto& a : tree.alphas) {
    alphas.push_back(nlohmann::json::array({a.real(), a.imag()}));
  }
  return nlohmann::json{{"masks", tree.masks},
                        {"alphas", std::move(alphas)},
                        {"loss_history", tree.loss_history}};
}

nlohmann::json to_json(const ClusterReport& report) {
  nlohmann::json occurrence = nlohmann::json::array();
  for (const auto& [mask, count] : report.occurrence) {
    occurrence.push_back(nlohmann::json::array({mask, count}));
  }
  return nlohmann::json{{"masks", report.masks},
                        {"occurrence", std::move(occurrence)},
                        {"trees_analyzed", report.trees_analyzed},
                        {"threshold", report.threshold}};
}

void write_statevector_csv(const std::filesystem::path& path, const Statevector& s) {
  std::ofstream out = open_for_write(path);
  out << "index,real,imag\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << i << ',' << format_double(s.amps[i].real()) << ','
        << format_double(s.amps[i].imag()) << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, std::span<const EvolveState> steps) {
  std::ofstream out = open_for_write(path);
  out << "step,loss,depth,fidelity,dropped_mass,reality_leakage,term_count\n";
  for (const EvolveState& s : steps) {
    out << s.step << ',' << format_double(s.diag.loss) << ',' << s.diag.depth << ','
        << format_double(s.diag.fidelity) << ',' << format_double(s.diag.dropped_mass) << ','
        << format_double(s.diag.reality_leakage) << ',' << s.diag.term_count << '\n';
  }
}

void write_occurrence_csv(const std::filesystem::path& path, const ClusterReport& report) {
  std::ofstream out = open_for_write(path);
  out << "mask,count\n";
  for (const auto& [mask, count] : report.occurrence) {
    out << mask << ',' << count << '\n';
  }
}

}  // namespace ataheat::io
