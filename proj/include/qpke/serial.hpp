#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qpke/analysis.hpp"
#include "qpke/bitmath.hpp"
#include "qpke/linalg.hpp"
#include "qpke/qpke.hpp"
#include "qpke/states.hpp"

namespace qpke::serial {

using json = nlohmann::ordered_json;

// Fixed-point-free decimal rendering with full round-trip precision.
std::string format_real(Real value);

json bitstring_to_json(const BitString& b);     // {"width": w, "hex": "..."} lowercase, MSB-first
BitString bitstring_from_json(const json& j);

json matrix_to_json(const Eigen::Ref<const Matrix>& m);  // {"dim": d, "rows": [[...], ...]}
Matrix matrix_from_json(const json& j);

json cipher_state_to_json(const CipherState& s);  // {"n", "scheme", "amplitudes"}
CipherState cipher_state_from_json(const json& j);

json private_key_to_json(const PrivateKey& k);    // {"n", "scheme", "seed-hex", ...}
PrivateKey private_key_from_json(const json& j);

json public_key_to_json(const PublicKey& k);      // {"s": ..., "state": ...}
PublicKey public_key_from_json(const json& j);
json ciphertext_to_json(const Ciphertext& c);
Ciphertext ciphertext_from_json(const json& j);

json report_to_json(const analysis::DistanceReport& r);
json report_to_json(const analysis::AttackReport& r);
json report_to_json(const analysis::MulticopyReport& r);
json report_to_json(const analysis::ScanReport& r);

// Stable CSV schema shared by every command.
std::string csv_header();  // n,scheme,pair,computed,expected,error,runtime_ms
std::string csv_row(const analysis::DistanceReport& r);

// Eigenvalue list export, one value per line.
std::string eigenvalues_csv(const Vector& values);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace qpke::serial
