#pragma once

#include "agc/contract/contract.hpp"
#include "agc/world/world.hpp"

#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace agc::engine {

struct ExternalSynthConfig {
  /// Shell command; `{input}` is replaced by the path of the input file.
  std::string command;
  std::chrono::seconds timeout{60};
};

/// Runs an external synthesizer. Invocations through one adapter are
/// serialized.
class SynthAdapter {
public:
  explicit SynthAdapter(ExternalSynthConfig config) : config_(std::move(config)) {}

  const ExternalSynthConfig &config() const noexcept { return config_; }

  struct RunResult {
    bool finished = false; // false on timeout or spawn failure
    int exit_code = -1;
    std::string output; // stdout and stderr
  };

  /// Writes `input_text` to a temporary file and runs the command on it.
  RunResult run(const std::string &input_text);

private:
  ExternalSynthConfig config_;
  std::mutex mutex_;
};

enum class Realizability { Realizable, Unrealizable, ToolError };

std::string_view realizability_name(Realizability r) noexcept;

struct RealizabilityResult {
  Realizability verdict = Realizability::ToolError;
  /// (A & MTX(A) & ADJ(A)) -> (G & MTX(G) & ADJ(G))
  ltl::Formula formula;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  /// Text written to the adapter input file.
  std::string input_file;
  /// True when the verdict follows from validity or unsatisfiability of the
  /// formula and no tool was run.
  bool decided_locally = false;
  /// Tool output, or the reason for a ToolError.
  std::string message;
};

/// The first whole word REALIZABLE or UNREALIZABLE in `output`.
std::optional<Realizability> parse_verdict(const std::string &output);

/// Builds the realizability formula and asks the adapter. `inputs` are the
/// environment-controlled atoms; `outputs` plus every other atom of the
/// formula are outputs. Decided without the tool when the formula is valid
/// (Realizable), unsatisfiable (Unrealizable), or satisfiable with no inputs
/// (Realizable). Otherwise a null adapter yields ToolError("no adapter").
RealizabilityResult check_realizability(const contract::Contract &c,
                                        const world::WorldModel &w,
                                        SynthAdapter *adapter,
                                        const std::vector<std::string> &inputs = {},
                                        const std::vector<std::string> &outputs = {},
                                        const contract::Context &ctx = {});

} // namespace agc::engine
