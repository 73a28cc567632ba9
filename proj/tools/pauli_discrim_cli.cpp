// Copyright 2026 The pauli-discrim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: single-problem reports, entanglement-breaking
// certification, improvement-region CSV emission, and the self-verification
// battery. Data goes to stdout in the declared format; diagnostics go to
// stderr. Exit codes: 0 success (eb-check: channel is EB), 1 eb-check
// non-EB / verify failure, 2 invalid input, 3 internal consistency fault.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pauli_discrim/channels.hpp"
#include "pauli_discrim/discrimination.hpp"
#include "pauli_discrim/errors.hpp"
#include "pauli_discrim/verify.hpp"

namespace {

using nlohmann::json;
using namespace pauli_discrim;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // eb-check: not EB; verify: a property failed
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

std::string g15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::array<double, 4> parse_probs(const std::string& text) {
  std::array<double, 4> out{};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t comma = text.find(',', pos);
    const bool last = i == 3;
    if (last != (comma == std::string::npos))
      throw ValidationError("expected four comma-separated probabilities, got '" + text + "'");
    const std::string piece = text.substr(pos, last ? std::string::npos : comma - pos);
    std::size_t used = 0;
    try {
      out[static_cast<std::size_t>(i)] = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse probability '" + piece + "'");
    }
    if (used != piece.size()) throw ValidationError("cannot parse probability '" + piece + "'");
    pos = comma + 1;
  }
  return out;
}

PauliChannel channel_with_warning(const std::array<double, 4>& weights, const std::string& label) {
  const double sum = weights[0] + weights[1] + weights[2] + weights[3];
  if (std::abs(sum - 1.0) > 1e-12)
    std::cerr << "warning: " << label << " sums to " << g15(sum) << "; renormalizing\n";
  return make_pauli_channel(weights);
}

struct ChannelSpec {
  std::optional<double> q;
  std::optional<std::string> probs;

  PauliChannel resolve(const std::string& label) const {
    if (q.has_value() == probs.has_value())
      throw ValidationError("give exactly one of --" + label + " or --probs" +
                            (label.size() > 1 ? label.substr(1) : std::string()));
    if (q) return depolarizing(*q);
    return channel_with_warning(parse_probs(*probs), "probs" + label.substr(1));
  }
};

json inputs_echo(const std::optional<double>& q1, const std::optional<std::string>& probs1,
                 const std::optional<double>& q2, const std::optional<std::string>& probs2, double p) {
  json inputs;
  if (q1) inputs["q1"] = *q1;
  if (q2) inputs["q2"] = *q2;
  if (probs1) inputs["probs1"] = parse_probs(*probs1);
  if (probs2) inputs["probs2"] = parse_probs(*probs2);
  inputs["p"] = p;
  return inputs;
}

void emit(const json& record, const std::string& format) {
  if (format == "json") {
    std::cout << record.dump(2) << "\n";
    return;
  }
  // Text format: human-oriented, non-contractual.
  std::cout << "schema_version: " << record["schema_version"].get<std::string>() << "\n";
  std::cout << "command: " << record["command"].get<std::string>() << "\n";
  for (const std::string section : {"inputs", "results"}) {
    for (const auto& [key, value] : record[section].items()) {
      std::cout << key << ": ";
      if (value.is_number_float()) {
        std::cout << g15(value.get<double>());
      } else if (value.is_array()) {
        bool first = true;
        for (const auto& x : value) {
          if (!first) std::cout << ",";
          std::cout << (x.is_number_float() ? g15(x.get<double>()) : x.dump());
          first = false;
        }
      } else if (value.is_boolean()) {
        std::cout << (value.get<bool>() ? "yes" : "no");
      } else {
        std::cout << value.dump();
      }
      std::cout << "\n";
    }
  }
}

int cmd_discriminate(const ChannelSpec& spec1, const ChannelSpec& spec2, double p,
                     const std::string& format) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("--p must lie in [0, 1]");
  const DiscriminationProblem prob{spec1.resolve("q1"), spec2.resolve("q2"), p};
  const DiscriminationReport report = discriminate(prob);

  json record;
  record["schema_version"] = "1";
  record["command"] = "discriminate";
  record["inputs"] = inputs_echo(spec1.q, spec1.probs, spec2.q, spec2.probs, p);
  record["results"] = {
      {"r", report.r.r},
      {"err_unentangled", report.err_unentangled},
      {"optimal_bloch_axis", report.optimal_bloch_axis},
      {"err_entangled", report.err_entangled},
      {"entanglement_helps", report.entanglement_helps},
      {"improvement", report.improvement},
      {"r_product", report.r_product},
      {"boundary", report.boundary},
  };
  emit(record, format);
  return kExitOk;
}

int cmd_eb_check(const ChannelSpec& spec, const std::string& format) {
  const PauliChannel ch = spec.resolve("q");
  const EBReport report = is_entanglement_breaking(ch);

  json record;
  record["schema_version"] = "1";
  record["command"] = "eb-check";
  json inputs;
  if (spec.q) inputs["q"] = *spec.q;
  if (spec.probs) inputs["probs"] = parse_probs(*spec.probs);
  record["inputs"] = inputs;
  record["results"] = {
      {"is_entanglement_breaking", report.is_entanglement_breaking},
      {"min_pt_eigenvalue", report.min_pt_eigenvalue},
  };
  emit(record, format);
  return report.is_entanglement_breaking ? kExitOk : kExitNegative;
}

int cmd_region(double q2, double q1_min, double q1_max, int grid, const std::string& out_path) {
  const RegionSweep sweep = region_sweep(q2, q1_min, q1_max, grid);
  for (double q1 : sweep.skipped_q1)
    std::cerr << "warning: skipping q1=" << g15(q1) << " (coincides with q2)\n";

  std::FILE* out = stdout;
  if (!out_path.empty() && out_path != "-") {
    out = std::fopen(out_path.c_str(), "wb");
    if (out == nullptr) throw ValidationError("cannot open output file '" + out_path + "'");
  }
  std::fputs("q1,p_lower,p_upper\n", out);
  for (const RegionRow& row : sweep.rows)
    std::fprintf(out, "%.15g,%.15g,%.15g\n", row.q1, row.lower, row.upper);
  if (out != stdout) std::fclose(out);
  return kExitOk;
}

int cmd_verify(int samples, std::uint64_t seed, int grid) {
  std::cout << "verify: seed=" << seed << " samples=" << samples << " grid=" << grid << "\n";
  const std::vector<verify::PropertyResult> results = verify::run_all({samples, seed, grid});
  int failed = 0;
  for (const verify::PropertyResult& r : results) {
    std::printf("%s  %-48s worst_dev=%-12.3g %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.worst_deviation, r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("verify: %zu/%zu properties passed\n", results.size() - static_cast<std::size_t>(failed),
              results.size());
  return failed == 0 ? kExitOk : kExitNegative;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("PAULI_DISCRIM_SEED");
  if (env == nullptr || *env == '\0') return 42;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0')
    throw ValidationError("PAULI_DISCRIM_SEED is not an unsigned integer: '" + std::string(env) + "'");
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-error discrimination of qubit Pauli channels: exact error probabilities for "
               "unentangled and maximally entangled probes, entanglement-breaking certification via "
               "the PPT criterion, and the prior-probability region where entanglement strictly helps."};
  app.require_subcommand(1);

  // discriminate
  auto* disc = app.add_subcommand("discriminate", "Report both strategies' error probabilities for one problem");
  ChannelSpec d_spec1, d_spec2;
  double d_p = 0.5;
  std::string d_format = "text";
  disc->add_option("--q1", d_spec1.q, "First channel: depolarizing parameter");
  disc->add_option("--q2", d_spec2.q, "Second channel: depolarizing parameter");
  disc->add_option("--probs1", d_spec1.probs, "First channel: four comma-separated Pauli weights");
  disc->add_option("--probs2", d_spec2.probs, "Second channel: four comma-separated Pauli weights");
  disc->add_option("--p", d_p, "Prior probability of the first channel")->capture_default_str();
  disc->add_option("--format", d_format, "Output format: json or text")->check(CLI::IsMember({"json", "text"}));

  // region
  auto* region = app.add_subcommand("region", "CSV of the prior-probability improvement region over a q1 grid");
  double r_q2 = 0.25, r_q1_min = 0.0, r_q1_max = 0.5;
  int r_grid = 200;
  std::string r_out;
  region->add_option("--q2", r_q2, "Second (reference) depolarizing parameter")->capture_default_str();
  region->add_option("--q1-min", r_q1_min, "Grid start")->capture_default_str();
  region->add_option("--q1-max", r_q1_max, "Grid end")->capture_default_str();
  region->add_option("--grid", r_grid, "Number of grid points")->capture_default_str();
  region->add_option("--out", r_out, "Output path (default stdout)");

  // eb-check
  auto* eb = app.add_subcommand("eb-check", "Certify the entanglement-breaking property via PPT");
  ChannelSpec e_spec;
  std::string e_format = "text";
  eb->add_option("--q", e_spec.q, "Depolarizing parameter");
  eb->add_option("--probs", e_spec.probs, "Four comma-separated Pauli weights");
  eb->add_option("--format", e_format, "Output format: json or text")->check(CLI::IsMember({"json", "text"}));

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the cross-module property battery");
  int v_samples = 10000, v_grid = 24;
  std::optional<std::uint64_t> v_seed;
  verify_cmd->add_option("--samples", v_samples, "Random cases per property")->capture_default_str();
  verify_cmd->add_option("--seed", v_seed, "Generator seed (default 42, or PAULI_DISCRIM_SEED)");
  verify_cmd->add_option("--grid", v_grid, "Bloch grid for the brute-force oracle")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (app.got_subcommand(disc)) return cmd_discriminate(d_spec1, d_spec2, d_p, d_format);
    if (app.got_subcommand(region)) return cmd_region(r_q2, r_q1_min, r_q1_max, r_grid, r_out);
    if (app.got_subcommand(eb)) return cmd_eb_check(e_spec, e_format);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(v_samples, v_seed ? *v_seed : default_seed(), v_grid);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitBadInput;
}
