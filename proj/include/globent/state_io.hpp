#pragma once

// JSON state files: {"n_qubits": N, "amplitudes": [[re, im], ...]} with 2^N
// entries in basis-index order.

#include <filesystem>
#include <string>
#include <string_view>

#include "globent/state.hpp"

namespace globent {

std::string state_to_json(const PureState& psi);

// Throws FormatError naming the offending field. Amplitudes are normalized
// on load; an all-zero vector is rejected.
PureState state_from_json(std::string_view text);

void write_state_file(const std::filesystem::path& path, const PureState& psi);
PureState read_state_file(const std::filesystem::path& path);

}  // namespace globent
