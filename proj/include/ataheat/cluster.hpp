#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ataheat/ata.hpp"

namespace ataheat {

/// Masks recurring across the trees of many solves.
struct ClusterReport {
  std::vector<std::uint64_t> masks;  ///< sorted by occurrence desc, then mask asc
  std::map<std::uint64_t, std::size_t> occurrence;
  std::size_t trees_analyzed = 0;
  double threshold = 1.0;
};

/// Masks present in at least threshold * |trees| of the given trees.
ClusterReport detect(std::span<const std::vector<std::uint64_t>> tree_masks, double threshold);
ClusterReport detect(std::span<const AnsatzTree> trees, double threshold);

/// Tree seeded with every cluster mask, weights solved immediately.
AnsatzTree warm_start(const ClusterReport& cluster, const Statevector& root,
                      const Spectrum& spectrum);

struct HaarStudyConfig {
  int n = 6;
  std::size_t samples = 8;
  std::size_t depth_cap = 50;
  double c = 0.1;
  double threshold = 1.0;
  std::uint64_t seed = 1;
  Expansion expansion = Expansion::latest_node;
};

/// Cluster of trees grown from independent Haar-random roots (normalized
/// complex Gaussian amplitudes), each grown to the depth cap.
ClusterReport haar_random_study(const HaarStudyConfig& cfg);

}  // namespace ataheat
