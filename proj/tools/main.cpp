#include <CLI11.hpp>

#include <string>

#include "qpke/cli.hpp"

namespace {

// Shared flag wiring so every subcommand accepts the same vocabulary.
void add_common_flags(CLI::App* cmd, qpke::cli::RunConfig& config, std::string& n_text,
                      std::string& t_text) {
  cmd->add_option("--n", n_text, "register sizes: \"4\", \"3,5\", \"2..6\"");
  cmd->add_option("--l", config.l, "plaintext bits per message (lbit scheme)");
  cmd->add_option("--t", t_text, "copy counts for multicopy checks");
  cmd->add_option("--scheme", config.scheme, "1bit | 2bit | lbit")
      ->check(CLI::IsMember({"1bit", "2bit", "lbit"}));
  cmd->add_option("--trials", config.trials, "Monte-Carlo sample count");
  cmd->add_option("--seed", config.seed, "deterministic RNG seed");
  cmd->add_option("--out", config.out, "output directory for reports");
  cmd->add_option("--profile", config.profile, "ci | nightly (QPKE_PROFILE overrides)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale simulator for a symmetric-state public-key encryption scheme"};
  app.require_subcommand(1);

  qpke::cli::RunConfig config;
  std::string n_text, t_text;

  CLI::App* verify = app.add_subcommand("verify", "check ensemble distances against closed forms");
  add_common_flags(verify, config, n_text, t_text);
  verify->add_option("--target", config.target, "lemma4 | appendix | multicopy")
      ->check(CLI::IsMember({"lemma4", "appendix", "multicopy"}));

  CLI::App* protocol = app.add_subcommand("protocol", "run a full key-publish/encrypt/decrypt session");
  add_common_flags(protocol, config, n_text, t_text);
  protocol->add_option("--messages", config.messages, "number of messages in the session");
  protocol->add_option("--eve", config.eve, "none | passive-measure | helstrom-guess");

  CLI::App* scan = app.add_subcommand("scan", "sweep pairwise ensemble distances for the l-bit scheme");
  add_common_flags(scan, config, n_text, t_text);

  CLI::App* keygen = app.add_subcommand("keygen", "generate a private key file");
  add_common_flags(keygen, config, n_text, t_text);
  keygen->add_flag("--fixed-key", config.fixed_key, "reuse one s across publishes, budget-limited");
  keygen->add_option("--t-max", config.t_max, "publish budget for fixed-key mode");
  keygen->add_option("--out-file", config.out_file, "private key destination")->required();

  CLI::App* publish = app.add_subcommand("publish", "derive one public-key copy from a private key");
  add_common_flags(publish, config, n_text, t_text);
  publish->add_option("--key", config.key_file, "private key file")->required();
  publish->add_option("--out-file", config.out_file, "public key destination")->required();

  CLI::App* encrypt = app.add_subcommand("encrypt", "encrypt a plaintext with a public-key copy");
  add_common_flags(encrypt, config, n_text, t_text);
  encrypt->add_option("--in-file", config.in_file, "public key file")->required();
  encrypt->add_option("--plaintext", config.plaintext, "binary plaintext, e.g. 01")->required();
  encrypt->add_option("--out-file", config.out_file, "ciphertext destination")->required();

  CLI::App* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext with the private key");
  add_common_flags(decrypt, config, n_text, t_text);
  decrypt->add_option("--key", config.key_file, "private key file")->required();
  decrypt->add_option("--in-file", config.in_file, "ciphertext file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? qpke::cli::kExitPass : qpke::cli::kExitUsage;
  }

  config.command = app.get_subcommands().front()->get_name();
  try {
    if (!n_text.empty()) config.ns = qpke::cli::parse_range(n_text);
    if (!t_text.empty()) config.ts = qpke::cli::parse_range(t_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qpke::cli::kExitUsage;
  }
  return qpke::cli::run(std::move(config));
}
