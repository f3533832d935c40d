#include "qpke/serial.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qpke/errors.hpp"

namespace qpke::serial {

namespace {

std::string hex_of(std::uint64_t value, int digits) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return std::string(buf + 16 - digits, buf + 16);
}

std::uint64_t parse_hex(const std::string& hex) {
  if (hex.empty() || hex.size() > 16) throw std::invalid_argument("bad hex length");
  std::uint64_t v = 0;
  for (char c : hex) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
    else throw std::invalid_argument("bad hex digit");
  }
  return v;
}

}  // namespace

std::string format_real(Real value) {
  if (std::isnan(value)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json bitstring_to_json(const BitString& b) {
  return json{{"width", b.width()}, {"hex", hex_of(b.value(), (b.width() + 3) / 4)}};
}

BitString bitstring_from_json(const json& j) {
  return BitString(parse_hex(j.at("hex").get<std::string>()), j.at("width").get<int>());
}

json matrix_to_json(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() != m.cols()) throw dimension_error("matrix export expects a square matrix");
  json rows = json::array();
  for (std::int64_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::int64_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"rows", std::move(rows)}};
}

Matrix matrix_from_json(const json& j) {
  const std::int64_t dim = j.at("dim").get<std::int64_t>();
  const json& rows = j.at("rows");
  if (static_cast<std::int64_t>(rows.size()) != dim)
    throw dimension_error("matrix row count does not match dim");
  Matrix m(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r) {
    if (static_cast<std::int64_t>(rows[r].size()) != dim)
      throw dimension_error("matrix column count does not match dim");
    for (std::int64_t c = 0; c < dim; ++c) m(r, c) = rows[r][c].get<Real>();
  }
  return m;
}

json cipher_state_to_json(const CipherState& s) {
  json amps = json::array();
  for (std::int64_t idx = 0; idx < s.vector.dim(); ++idx) amps.push_back(s.vector.vec()[idx]);
  return json{{"n", s.n()}, {"scheme", s.scheme.name()}, {"amplitudes", std::move(amps)}};
}

CipherState cipher_state_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  SchemeSpec scheme = SchemeSpec::from_name(j.at("scheme").get<std::string>(), n);
  const json& amps = j.at("amplitudes");
  Vector v(static_cast<std::int64_t>(amps.size()));
  for (std::int64_t idx = 0; idx < v.size(); ++idx) v[idx] = amps[idx].get<Real>();
  CipherState out{StateVector(std::move(v)), scheme, std::nullopt};
  if (out.vector.qubits() != n) throw dimension_error("amplitude count does not match width");
  return out;
}

json private_key_to_json(const PrivateKey& k) {
  std::string seed_hex;
  for (std::uint64_t w : k.seed()) seed_hex += hex_of(w, 16);
  json j{{"n", k.n()}, {"scheme", k.scheme().name()}, {"seed-hex", seed_hex}};
  if (k.options().wide_s) {
    j["wide-s"] = true;
    j["s-width"] = k.options().s_width;
  }
  if (k.mode() == KeyMode::FixedKey) {
    j["mode"] = "fixed-key";
    j["s"] = bitstring_to_json(*k.fixed_s());
    j["t-max"] = k.t_max();
    j["used"] = k.used();  // the budget travels with the key
  }
  return j;
}

PrivateKey private_key_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  SchemeSpec scheme = SchemeSpec::from_name(j.at("scheme").get<std::string>(), n);
  const std::string seed_hex = j.at("seed-hex").get<std::string>();
  if (seed_hex.size() != 64) throw std::invalid_argument("seed-hex must be 64 hex digits");
  Seed256 seed;
  for (int w = 0; w < 4; ++w) seed[w] = parse_hex(seed_hex.substr(16 * w, 16));
  KeygenOptions opts;
  std::optional<BitString> fixed_s;
  if (j.value("wide-s", false)) {
    opts.wide_s = true;
    opts.s_width = j.at("s-width").get<int>();
  }
  std::int64_t used = 0;
  if (j.value("mode", std::string("fresh-s")) == "fixed-key") {
    opts.mode = KeyMode::FixedKey;
    opts.t_max = j.at("t-max").get<int>();
    fixed_s = bitstring_from_json(j.at("s"));
    used = j.value("used", std::int64_t{0});
  }
  PrivateKey key(scheme, seed, opts, std::move(fixed_s));
  key.restore_used(used);
  return key;
}

json public_key_to_json(const PublicKey& k) {
  return json{{"s", bitstring_to_json(k.s)}, {"state", cipher_state_to_json(k.state)}};
}

PublicKey public_key_from_json(const json& j) {
  return PublicKey{bitstring_from_json(j.at("s")), cipher_state_from_json(j.at("state"))};
}

json ciphertext_to_json(const Ciphertext& c) {
  return json{{"s", bitstring_to_json(c.s)}, {"state", cipher_state_to_json(c.state)}};
}

Ciphertext ciphertext_from_json(const json& j) {
  return Ciphertext{bitstring_from_json(j.at("s")), cipher_state_from_json(j.at("state"))};
}

namespace {

json nan_to_null(Real v) { return std::isnan(v) ? json(nullptr) : json(v); }

}  // namespace

json report_to_json(const analysis::DistanceReport& r) {
  json j{{"n", r.n},
         {"scheme", r.scheme},
         {"pair", r.pair},
         {"computed", r.computed},
         {"expected", nan_to_null(r.expected)},
         {"kind", analysis::to_string(r.kind)},
         {"error", nan_to_null(r.abs_error)},
         {"runtime_ms", r.runtime_ms},
         {"passed", r.passed}};
  if (r.cross_check) j["cross_check"] = *r.cross_check;
  return j;
}

json report_to_json(const analysis::AttackReport& r) {
  json j{{"n", r.n},
         {"trials", r.trials},
         {"histogram", r.histogram},
         {"chi_square_p", r.chi_square_p},
         {"empirical_success", r.empirical_success},
         {"helstrom_bound", r.helstrom_bound},
         {"sigma", r.sigma}};
  if (r.conditional_p) j["conditional_p"] = *r.conditional_p;
  if (r.mi) j["mi"] = *r.mi;
  if (r.mi_null_q99) j["mi_null_q99"] = *r.mi_null_q99;
  if (r.mi_below_null) j["mi_below_null"] = *r.mi_below_null;
  return j;
}

json report_to_json(const analysis::MulticopyReport& r) {
  return json{{"n", r.n},
              {"t", r.t},
              {"norm_centered", r.norm_centered},
              {"norm_full", r.norm_full},
              {"bound", r.bound},
              {"strict_ok", r.strict_ok},
              {"runtime_ms", r.runtime_ms}};
}

json report_to_json(const analysis::ScanReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(report_to_json(row));
  return json{{"n", r.n},
              {"l", r.l},
              {"max_distance", r.max_distance},
              {"ratio", r.ratio},
              {"rows", std::move(rows)}};
}

std::string csv_header() { return "n,scheme,pair,computed,expected,error,runtime_ms"; }

std::string csv_row(const analysis::DistanceReport& r) {
  std::ostringstream out;
  out << r.n << ',' << r.scheme << ',' << r.pair << ',' << format_real(r.computed) << ','
      << format_real(r.expected) << ',' << format_real(r.abs_error) << ','
      << format_real(r.runtime_ms);
  return out.str();
}

std::string eigenvalues_csv(const Vector& values) {
  std::string out = "eigenvalue\n";
  for (std::int64_t j = 0; j < values.size(); ++j) out += format_real(values[j]) + "\n";
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qpke::serial
