#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qpke/states.hpp"

namespace qpke::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// ci keeps runs short for the test suite; nightly allows the deep sweeps.
struct Profile {
  std::string name;
  int max_n;
  std::int64_t max_trials;
};
Profile profile_by_name(const std::string& name);  // "ci" | "nightly"

struct RunConfig {
  std::string command;  // verify | protocol | scan | keygen | publish | encrypt | decrypt
  std::vector<int> ns;
  int l = 1;
  std::vector<int> ts;
  std::string scheme = "1bit";  // 1bit | 2bit | lbit
  std::int64_t trials = -1;     // -1 selects the profile default
  std::int64_t messages = -1;
  std::uint64_t seed = 1;
  std::string eve = "none";
  std::string target = "lemma4";
  std::filesystem::path out = ".";
  std::string profile = "ci";  // QPKE_PROFILE overrides

  // File-exchange paths for the key-handling subcommands.
  std::filesystem::path key_file;
  std::filesystem::path in_file;
  std::filesystem::path out_file;
  std::string plaintext;
  bool fixed_key = false;
  int t_max = -1;
};

// "3", "4,6", "2..6" (inclusive).
std::vector<int> parse_range(const std::string& text);

SchemeSpec scheme_for(const RunConfig& config, int n);

// Applies the QPKE_PROFILE override, fills profile-dependent defaults, and
// checks every size parameter against the profile caps.
// Returns kExitPass or kExitUsage.
int finalize_config(RunConfig& config);

int cmd_verify(const RunConfig& config);
int cmd_protocol(const RunConfig& config);
int cmd_scan(const RunConfig& config);
int cmd_keygen(const RunConfig& config);
int cmd_publish(const RunConfig& config);
int cmd_encrypt(const RunConfig& config);
int cmd_decrypt(const RunConfig& config);

// finalize_config + dispatch; maps exceptions to the exit-code contract.
int run(RunConfig config);

}  // namespace qpke::cli
