#include "ataheat/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ataheat/rng.hpp"

namespace ataheat {

ClusterReport detect(std::span<const std::vector<std::uint64_t>> tree_masks, double threshold) {
  if (tree_masks.empty()) throw std::invalid_argument("detect: no trees given");
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw std::invalid_argument("detect: threshold must lie in (0, 1]");
  }

  ClusterReport report;
  report.trees_analyzed = tree_masks.size();
  report.threshold = threshold;
  for (const auto& masks : tree_masks) {
    std::vector<std::uint64_t> unique(masks.begin(), masks.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (std::uint64_t m : unique) ++report.occurrence[m];
  }

  const double needed = threshold * static_cast<double>(report.trees_analyzed);
  for (const auto& [mask, count] : report.occurrence) {
    if (static_cast<double>(count) + 1e-9 >= needed) report.masks.push_back(mask);
  }
  std::sort(report.masks.begin(), report.masks.end(), [&](std::uint64_t a, std::uint64_t b) {
    const std::size_t ca = report.occurrence.at(a);
    const std::size_t cb = report.occurrence.at(b);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  return report;
}

ClusterReport detect(std::span<const AnsatzTree> trees, double threshold) {
  std::vector<std::vector<std::uint64_t>> masks;
  masks.reserve(trees.size());
  for (const AnsatzTree& t : trees) masks.push_back(t.masks);
  return detect(masks, threshold);
}

AnsatzTree warm_start(const ClusterReport& cluster, const Statevector& root,
                      const Spectrum& spectrum) {
  if (cluster.masks.empty()) throw std::invalid_argument("warm_start: empty cluster");

  AtaConfig cfg;
  cfg.max_depth = std::max<std::size_t>(cluster.masks.size(), 1);
  // A no-op decomposition: growth stops at max_depth before scoring matters.
  DiagonalPauliSum identity(root.n);
  identity.add_term(0, 1.0);
  return grow(root, spectrum, identity, cfg, cluster.masks);
}

ClusterReport haar_random_study(const HaarStudyConfig& cfg) {
  if (cfg.samples < 2) throw std::invalid_argument("haar_random_study: samples must be >= 2");

  const GridSpec grid = GridSpec::dimensionless(cfg.n, cfg.c);
  const Spectrum spectrum = approx_spectrum(grid);
  const DiagonalPauliSum decomposition = decompose_operator(spectrum);

  AtaConfig ata;
  ata.max_depth = cfg.depth_cap;
  ata.expansion = cfg.expansion;

  std::vector<std::vector<std::uint64_t>> masks;
  masks.reserve(cfg.samples);
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    Rng rng = Rng::substream(cfg.seed, "haar-sample-" + std::to_string(s));
    std::vector<std::complex<double>> amps(grid.points());
    for (auto& a : amps) a = {rng.gaussian(), rng.gaussian()};
    Statevector root = Statevector::from_complex(std::move(amps), Domain::position);
    const double nrm = root.norm();
    for (auto& a : root.amps) a /= nrm;

    const AnsatzTree tree = grow(fourier(root), spectrum, decomposition, ata);
    masks.push_back(tree.masks);
  }
  return detect(masks, cfg.threshold);
}

}  // namespace ataheat
