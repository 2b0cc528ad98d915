#pragma once

#include "agc/ltl/lasso.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace agc::library {

/// Deterministic Mealy machine over boolean inputs and outputs.
///
/// Text format, one declaration per line (`#` starts a comment):
///
///     states: s0 s1
///     initial: s0
///     inputs: s
///     outputs: g
///     trans: s0 s=1 -> s1 g=0
///
/// Assignments list every input (resp. output) as name=0|1 separated by
/// commas, or `-` when the set is empty.
class MealyMachine {
public:
  struct Target {
    std::size_t state = 0;
    /// Output values in `outputs()` order.
    std::vector<bool> outputs;
  };

  /// Throws ParseError on malformed text, unknown names, incomplete
  /// assignments and duplicate transitions.
  static MealyMachine parse(std::string_view text);
  static MealyMachine load(const std::string &path);

  const std::vector<std::string> &states() const noexcept { return states_; }
  std::size_t initial() const noexcept { return initial_; }
  const std::vector<std::string> &inputs() const noexcept { return inputs_; }
  const std::vector<std::string> &outputs() const noexcept { return outputs_; }

  /// Input letters are bit masks in `inputs()` order.
  const Target *step(std::size_t state, std::uint64_t letter) const;
  /// (state, input letter) pairs without a transition.
  std::vector<std::pair<std::string, std::string>> missing_transitions() const;
  bool is_total() const { return missing_transitions().empty(); }

  /// Runs the machine on an input lasso over exactly `inputs()` and returns
  /// the combined lasso over inputs and outputs (atoms sorted). The loop is
  /// closed when a (state, input position) pair repeats.
  /// Throws Error on a missing transition or a mismatched atom set.
  ltl::LassoTrace simulate(const ltl::LassoTrace &input) const;

private:
  std::vector<std::string> states_;
  std::size_t initial_ = 0;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::map<std::pair<std::size_t, std::uint64_t>, Target> delta_;
};

} // namespace agc::library
