#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "ataheat/ata.hpp"
#include "ataheat/cluster.hpp"
#include "ataheat/evolve.hpp"
#include "ataheat/pauli.hpp"
#include "ataheat/state.hpp"

namespace ataheat::io {

/// Shortest round-trip decimal form, locale-independent ('.' decimal).
std::string format_double(double v);

/// {"n": int, "terms": [[mask, coeff], ...]} with masks ascending.
nlohmann::json to_json(const DiagonalPauliSum& p);
DiagonalPauliSum pauli_sum_from_json(const nlohmann::json& j);

/// {"masks": [...], "alphas": [[re, im], ...], "loss_history": [...]}.
nlohmann::json to_json(const AnsatzTree& tree);

nlohmann::json to_json(const ClusterReport& report);

/// CSV dialect everywhere: comma separators, '.' decimal, LF endings,
/// header row first.
void write_statevector_csv(const std::filesystem::path& path, const Statevector& s);
void write_trajectory_csv(const std::filesystem::path& path, std::span<const EvolveState> steps);
void write_occurrence_csv(const std::filesystem::path& path, const ClusterReport& report);

}  // namespace ataheat::io
