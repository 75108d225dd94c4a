#include "ataheat/ata.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "ataheat/errors.hpp"

namespace ataheat {

namespace {

// All node overlaps reduce to Walsh transforms of the root's Fourier weights:
// <i|A'^p|j> = sum_k |r_k|^2 lambda_k^p (-1)^popcount((m_i^m_j) & k), so one
// transform of u * lambda^p serves every Gram entry as a table lookup.
struct GrowthTables {
  std::size_t size = 0;
  std::vector<double> u;        // |r_k|^2 of the normalized root
  std::vector<double> lambda;   // spectrum values
  std::vector<double> w1;       // fwht(u * lambda)
  std::vector<double> w2;       // fwht(u * lambda^2)

  GrowthTables(const Statevector& root, const Spectrum& spectrum) {
    if (root.size() != spectrum.size()) {
      throw std::invalid_argument("ata: root and spectrum sizes differ");
    }
    size = root.size();
    const double nrm = root.norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("ata: zero root vector");
    const double inv = 1.0 / (nrm * nrm);

    u.resize(size);
    lambda = spectrum.values;
    w1.resize(size);
    w2.resize(size);
    for (std::size_t k = 0; k < size; ++k) {
      u[k] = std::norm(root.amps[k]) * inv;
      w1[k] = u[k] * lambda[k];
      w2[k] = w1[k] * lambda[k];
    }
    detail::fwht(w1);
    detail::fwht(w2);
  }

  // Diagonal multiplier M_k = sum_j alpha_j (-1)^popcount(m_j & k).
  std::vector<double> multiplier(std::span<const std::uint64_t> masks,
                                 std::span<const double> alphas) const {
    std::vector<double> m(size, 0.0);
    for (std::size_t j = 0; j < masks.size(); ++j) m[masks[j]] += alphas[j];
    detail::fwht(m);
    return m;
  }

  // Residual loss of the normalized root: sum_k u_k (lambda_k M_k - 1)^2.
  double loss(std::span<const double> multiplier_values) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
      const double resid = lambda[k] * multiplier_values[k] - 1.0;
      sum += u[k] * resid * resid;
    }
    return sum;
  }
};

struct InternalSolve {
  std::vector<double> alphas;
  double loss = 1.0;
};

InternalSolve solve_with_tables(std::span<const std::uint64_t> masks,
                                const GrowthTables& tables, double ridge_scale) {
  const auto d = static_cast<Eigen::Index>(masks.size());
  if (d == 0) throw std::invalid_argument("ata: weight solve needs at least one node");

  Eigen::MatrixXd gram(d, d);
  Eigen::VectorXd rhs(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = tables.w2[masks[i] ^ masks[j]];
      gram(i, j) = v;
      gram(j, i) = v;
    }
    rhs(i) = tables.w1[masks[i]];
  }

  const double ridge = ridge_scale * gram.trace() / static_cast<double>(d);
  Eigen::MatrixXd regularized = gram;
  regularized.diagonal().array() += ridge;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt = regularized.ldlt();
  Eigen::VectorXd alpha = ldlt.solve(rhs);
  // Two refinement sweeps push the ridge bias out of the normal equations
  // (the system is consistent: the right-hand side lies in the Gram range).
  for (int sweep = 0; sweep < 2; ++sweep) {
    alpha += ldlt.solve(rhs - gram * alpha);
  }

  const double rhs_norm = std::max(rhs.norm(), std::numeric_limits<double>::min());
  if (!alpha.allFinite() || (gram * alpha - rhs).norm() > 1e-6 * rhs_norm) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    alpha = svd.solve(rhs);
    if (!alpha.allFinite()) {
      throw DegenerateBasisError("ata: normal equations degenerate beyond the SVD rescue");
    }
  }

  InternalSolve out;
  out.alphas.assign(alpha.data(), alpha.data() + d);
  const std::vector<double> m = tables.multiplier(masks, out.alphas);
  out.loss = tables.loss(m);
  return out;
}

std::vector<std::uint64_t> candidate_masks(std::span<const std::uint64_t> tree_masks,
                                           const DiagonalPauliSum& decomposition,
                                           Expansion expansion) {
  std::unordered_set<std::uint64_t> present(tree_masks.begin(), tree_masks.end());
  std::vector<std::uint64_t> cands;
  auto expand_from = [&](std::uint64_t parent) {
    for (const auto& [mask, coeff] : decomposition.terms) {
      const std::uint64_t child = parent ^ mask;
      if (!present.contains(child)) cands.push_back(child);
    }
  };
  if (expansion == Expansion::latest_node) {
    expand_from(tree_masks.back());
  } else {
    for (std::uint64_t parent : tree_masks) expand_from(parent);
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

std::vector<ScoredChild> score_with_tables(std::span<const std::uint64_t> tree_masks,
                                           std::span<const double> alphas,
                                           const GrowthTables& tables,
                                           const DiagonalPauliSum& decomposition,
                                           Expansion expansion) {
  std::vector<ScoredChild> scored;
  for (std::uint64_t cand : candidate_masks(tree_masks, decomposition, expansion)) {
    double g = -2.0 * tables.w1[cand];
    for (std::size_t j = 0; j < tree_masks.size(); ++j) {
      g += 2.0 * alphas[j] * tables.w2[cand ^ tree_masks[j]];
    }
    scored.push_back({cand, std::abs(g)});
  }
  return scored;
}

std::vector<double> real_alphas(const AnsatzTree& tree) {
  std::vector<double> a(tree.alphas.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = tree.alphas[i].real();
  return a;
}

Statevector normalize_to_fourier(const Statevector& root) {
  Statevector f = root.domain == Domain::fourier ? root : fourier(root);
  return f;
}

// Shared growth driver; after every weight solve the callback may stop the
// loop (used by the minimal-depth search).
template <typename PerSolve>
AnsatzTree grow_impl(const Statevector& root, const Spectrum& spectrum,
                     const DiagonalPauliSum& decomposition, const AtaConfig& cfg,
                     std::span<const std::uint64_t> seed_masks, PerSolve per_solve) {
  if (cfg.max_depth < 1) throw std::invalid_argument("ata: max_depth must be >= 1");

  AnsatzTree tree;
  tree.root = normalize_to_fourier(root);
  tree.root_norm = tree.root.norm();

  tree.masks.push_back(0);
  for (std::uint64_t m : seed_masks) {
    if (m >= tree.root.size()) throw std::invalid_argument("ata: seed mask out of range");
    if (std::find(tree.masks.begin(), tree.masks.end(), m) == tree.masks.end()) {
      tree.masks.push_back(m);
    }
  }

  const GrowthTables tables(tree.root, spectrum);

  while (true) {
    const InternalSolve solve = solve_with_tables(tree.masks, tables, cfg.ridge);
    tree.alphas.assign(solve.alphas.size(), {});
    for (std::size_t i = 0; i < solve.alphas.size(); ++i) tree.alphas[i] = solve.alphas[i];
    tree.loss_history.push_back(solve.loss);

    if (per_solve(tree, tables)) {
      tree.stop_reason = StopReason::none;
      break;
    }
    if (solve.loss <= cfg.loss_tol) {
      tree.stop_reason = StopReason::loss_tol;
      break;
    }
    if (cfg.stagnation_tol > 0.0 && tree.loss_history.size() >= 2) {
      const double prev = tree.loss_history[tree.loss_history.size() - 2];
      const double gain = prev - solve.loss;
      if (gain < cfg.stagnation_tol * std::max(prev, std::numeric_limits<double>::min())) {
        tree.stop_reason = StopReason::stagnation;
        break;
      }
    }
    if (tree.masks.size() >= cfg.max_depth) {
      tree.stop_reason = StopReason::max_depth;
      break;
    }

    const std::vector<ScoredChild> scored = score_with_tables(
        tree.masks, solve.alphas, tables, decomposition, cfg.expansion);
    if (scored.empty()) {
      tree.stop_reason = StopReason::exhaustion;
      break;
    }
    const ScoredChild* best = &scored.front();
    for (const ScoredChild& s : scored) {
      if (s.score > best->score) best = &s;  // candidates ascend, ties keep the smaller mask
    }
    tree.masks.push_back(best->mask);
  }
  return tree;
}

}  // namespace

Statevector AnsatzTree::solution() const {
  std::vector<double> re(root.size(), 0.0);
  std::vector<double> im(root.size(), 0.0);
  for (std::size_t j = 0; j < masks.size(); ++j) {
    re[masks[j]] += alphas[j].real();
    im[masks[j]] += alphas[j].imag();
  }
  detail::fwht(re);
  detail::fwht(im);

  Statevector x = root;
  for (std::size_t k = 0; k < x.size(); ++k) {
    x.amps[k] *= std::complex<double>(re[k], im[k]);
  }
  return inverse_fourier(x);
}

DiagonalPauliSum AnsatzTree::as_pauli_sum() const {
  DiagonalPauliSum p(root.n);
  for (std::size_t j = 0; j < masks.size(); ++j) {
    p.add_term(masks[j], alphas[j].real());
  }
  p.prune();
  return p;
}

WeightSolve solve_weights(const AnsatzTree& tree, const Spectrum& spectrum) {
  if (tree.masks.empty()) throw std::invalid_argument("solve_weights: tree has no nodes");
  const GrowthTables tables(tree.root, spectrum);
  const InternalSolve solve = solve_with_tables(tree.masks, tables, AtaConfig{}.ridge);
  WeightSolve out;
  out.alphas.assign(solve.alphas.begin(), solve.alphas.end());
  out.loss = solve.loss;
  return out;
}

std::vector<ScoredChild> score_children(const AnsatzTree& tree, const Spectrum& spectrum,
                                        const DiagonalPauliSum& decomposition,
                                        Expansion expansion) {
  if (tree.masks.empty() || tree.alphas.size() != tree.masks.size()) {
    throw std::invalid_argument("score_children: weights are not current");
  }
  const GrowthTables tables(tree.root, spectrum);
  return score_with_tables(tree.masks, real_alphas(tree), tables, decomposition, expansion);
}

AnsatzTree grow(const Statevector& root, const Spectrum& spectrum,
                const DiagonalPauliSum& decomposition, const AtaConfig& cfg,
                std::span<const std::uint64_t> seed_masks) {
  return grow_impl(root, spectrum, decomposition, cfg, seed_masks,
                   [](const AnsatzTree&, const GrowthTables&) { return false; });
}

AnsatzTree grow_with_observer(const Statevector& root, const Spectrum& spectrum,
                              const DiagonalPauliSum& decomposition, const AtaConfig& cfg,
                              const std::function<bool(const AnsatzTree&)>& on_solve,
                              std::span<const std::uint64_t> seed_masks) {
  return grow_impl(root, spectrum, decomposition, cfg, seed_masks,
                   [&on_solve](const AnsatzTree& tree, const GrowthTables&) {
                     return on_solve ? on_solve(tree) : false;
                   });
}

MinDepthResult min_depth_for_fidelity(const Statevector& root, const Spectrum& spectrum,
                                      const DiagonalPauliSum& decomposition,
                                      std::span<const double> reference, double target,
                                      const AtaConfig& cfg) {
  MinDepthResult result;

  double ref_norm_sq = 0.0;
  for (double v : reference) ref_norm_sq += v * v;
  if (!(ref_norm_sq > 0.0)) throw std::invalid_argument("min_depth_for_fidelity: zero reference");

  auto check = [&](const AnsatzTree& tree, const GrowthTables& tables) {
    const std::vector<double> m = tables.multiplier(tree.masks, real_alphas(tree));
    Statevector x = tree.root;
    for (std::size_t k = 0; k < x.size(); ++k) x.amps[k] *= m[k];
    x = inverse_fourier(x);

    std::complex<double> dot = 0.0;
    double x_norm_sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      dot += std::conj(x.amps[i]) * reference[i];
      x_norm_sq += std::norm(x.amps[i]);
    }
    const double fid = x_norm_sq > 0.0
                           ? std::abs(dot) / std::sqrt(x_norm_sq * ref_norm_sq)
                           : 0.0;
    result.depth = tree.depth();
    result.fidelity = fid;
    return fid >= target;
  };

  AnsatzTree tree = grow_impl(root, spectrum, decomposition, cfg, {}, check);
  result.saturated = tree.stop_reason != StopReason::none;
  return result;
}

}  // namespace ataheat
