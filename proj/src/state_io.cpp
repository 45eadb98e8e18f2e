#include "globent/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "globent/errors.hpp"

namespace globent {

using nlohmann::json;

std::string state_to_json(const PureState& psi) {
  json amps = json::array();
  for (const auto& z : psi.amplitudes()) amps.push_back({z.real(), z.imag()});
  json doc;
  doc["n_qubits"] = psi.n_qubits();
  doc["amplitudes"] = std::move(amps);
  return doc.dump();
}

PureState state_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("state file: top level must be an object");

  if (!doc.contains("n_qubits")) throw FormatError("n_qubits: missing");
  const auto& nq = doc["n_qubits"];
  if (!nq.is_number_integer()) throw FormatError("n_qubits: must be an integer");
  const auto n = nq.get<long long>();
  if (n < 1 || n > kMaxQubits) {
    throw FormatError("n_qubits: " + std::to_string(n) + " outside [1, " +
                      std::to_string(kMaxQubits) + "]");
  }
  const int n_qubits = static_cast<int>(n);

  if (!doc.contains("amplitudes")) throw FormatError("amplitudes: missing");
  const auto& arr = doc["amplitudes"];
  if (!arr.is_array()) throw FormatError("amplitudes: must be an array");
  if (arr.size() != dimension(n_qubits)) {
    throw FormatError("amplitudes: expected " + std::to_string(dimension(n_qubits)) +
                      " entries for n_qubits = " + std::to_string(n_qubits) + ", got " +
                      std::to_string(arr.size()));
  }
  Amplitudes amps;
  amps.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& e = arr[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw FormatError("amplitudes[" + std::to_string(i) + "]: must be [re, im]");
    }
    amps.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return PureState::from_amplitudes(n_qubits, std::move(amps));
  } catch (const NormError&) {
    throw FormatError("amplitudes: zero or non-finite vector");
  }
}

void write_state_file(const std::filesystem::path& path, const PureState& psi) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << state_to_json(psi) << '\n';
  if (!out) throw FormatError("write to " + path.string() + " failed");
}

PureState read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

}  // namespace globent
