#include "ataheat/resources.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ataheat::resources {

namespace {

int ancilla_for_depth(std::size_t depth_d) {
  if (depth_d < 1) throw std::invalid_argument("resources: depth must be >= 1");
  return depth_d == 1 ? 0 : static_cast<int>(std::bit_width(depth_d - 1));
}

}  // namespace

ChainProbability hhl_chain_probability(double p, std::size_t n_steps) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("hhl_chain_probability: p must lie in (0, 1)");
  ChainProbability out;
  out.exact = std::pow(1.0 - p, static_cast<double>(n_steps));
  out.exponential_model = std::exp(-p * static_cast<double>(n_steps));
  return out;
}

RunOverhead ata_run_overhead(std::size_t n_steps, std::size_t depth_d) {
  if (n_steps < 1) throw std::invalid_argument("ata_run_overhead: n_steps must be >= 1");
  const int m = ancilla_for_depth(depth_d);
  RunOverhead out;
  out.exact = static_cast<double>(n_steps) * std::ldexp(1.0, m);
  out.smooth_model = static_cast<double>(n_steps) * static_cast<double>(depth_d);
  return out;
}

GateCounts gate_counts(int n, Method method, std::size_t depth_d, RevModel rev) {
  if (n < 1) throw std::invalid_argument("gate_counts: n must be >= 1");
  GateCounts out;
  const double nn = static_cast<double>(n);
  if (method == Method::ata) {
    out.qft_two_qubit = nn * (nn - 1.0);
    out.total = kAtaGateConstant * out.qft_two_qubit + std::ldexp(1.0, ancilla_for_depth(depth_d));
  } else {
    out.qft_two_qubit = 0.0;
    out.total = kHhlGateConstant * nn * nn * nn;
    if (rev == RevModel::exponential) out.total += std::ldexp(1.0, n);
  }
  return out;
}

ResourceEstimate estimate_ata(int n, std::size_t n_steps, std::size_t depth_d) {
  ResourceEstimate est;
  est.method = Method::ata;
  est.n = n;
  est.n_steps = n_steps;
  est.depth_d = depth_d;
  est.ancilla_m = ancilla_for_depth(depth_d);
  est.two_qubit_gates = gate_counts(n, Method::ata, depth_d).total;
  est.success_probability = std::ldexp(1.0, -est.ancilla_m);
  est.expected_runs = ata_run_overhead(n_steps, depth_d).exact;
  return est;
}

ResourceEstimate estimate_hhl(int n, std::size_t n_steps, double p, RevModel rev) {
  ResourceEstimate est;
  est.method = Method::hhl;
  est.n = n;
  est.n_steps = n_steps;
  est.depth_d = 1;
  est.ancilla_m = 1;
  est.two_qubit_gates = gate_counts(n, Method::hhl, 1, rev).total;
  est.success_probability = hhl_chain_probability(p, n_steps).exact;
  est.expected_runs = est.success_probability > 0.0
                          ? std::ceil(1.0 / est.success_probability)
                          : std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace ataheat::resources
