#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "icc/channel.hpp"
#include "icc/outputs.hpp"

namespace icc {

enum class RunMode { Region, Hk, Gvbc, Relay, Ideal, Compare };

/// One batch run: which channel, what to compute, where to write.
struct RunConfig {
  ChannelParams channel;
  RunMode mode = RunMode::Compare;
  SweepConfig sweep;
  std::vector<double> k_list = {1.0, 4.0};  // conferencing gains compared
  std::string out_dir = ".";
  bool plot = true;
};

/// Config rejected by validation; `field` is the JSON path of the culprit
/// ("" when the document itself does not parse).
class ConfigError : public std::invalid_argument {
public:
  ConfigError(std::string field_path, const std::string& message)
      : std::invalid_argument(message), field(std::move(field_path)) {}
  std::string field;
};

/// File could not be written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] RunMode parse_mode(const std::string& word);

/// Parse and validate one JSON config document.  Unknown keys and wrong
/// types are ConfigErrors naming the offending field.
[[nodiscard]] RunConfig parse_run_config(const std::string& json_text);

/// Run the configured mode: compute the region(s), write one CSV per
/// region, the overlay SVG (compare and region modes, unless plot is off)
/// and report.txt into out_dir.  Returns the report text.  Throws
/// ConfigError, IoError, or std::domain_error (unbounded projection).
std::string execute(const RunConfig& config);

/// execute() under the CLI error contract: one-line machine-parseable
/// reason on stderr, exit code 0 ok / 2 validation / 3 computation /
/// 4 I/O.
int execute_for_exit_code(const RunConfig& config);

}  // namespace icc
