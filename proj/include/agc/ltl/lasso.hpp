#pragma once

#include "agc/ltl/formula.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace agc::ltl {

/// Truth assignment over the trace's declared atoms, in declaration order.
using State = std::vector<bool>;

/// Ultimately periodic word `prefix . loop^omega` over a declared atom set.
class LassoTrace {
public:
  LassoTrace(std::vector<std::string> aps, std::vector<State> prefix,
             std::vector<State> loop);

  /// Builds a trace from name->value maps; the atom set is the union of keys.
  static LassoTrace
  from_maps(const std::vector<std::map<std::string, bool>> &prefix,
            const std::vector<std::map<std::string, bool>> &loop);

  const std::vector<std::string> &aps() const noexcept { return aps_; }
  const std::vector<State> &prefix() const noexcept { return prefix_; }
  const std::vector<State> &loop() const noexcept { return loop_; }

  std::size_t length() const noexcept { return prefix_.size() + loop_.size(); }
  /// State at position `i` of the infinite word.
  const State &at(std::size_t i) const;
  /// Position reached from `i` by one step, wrapped into the lasso.
  std::size_t successor(std::size_t i) const noexcept;
  /// Index of `ap` in the declared set, or npos.
  std::size_t index_of(const std::string &ap) const noexcept;
  bool value(std::size_t position, const std::string &ap) const;

  std::string to_string() const;

private:
  std::vector<std::string> aps_;
  std::vector<State> prefix_;
  std::vector<State> loop_;
};

/// Exact LTL semantics on the lasso, evaluated at `position`.
/// Throws Error for undeclared atoms or positions outside the lasso.
bool evaluate_on_lasso(const Formula &f, const LassoTrace &trace,
                       std::size_t position = 0);

/// Truth value of `f` at every position 0..length()-1 of the lasso.
std::vector<bool> evaluate_all_positions(const Formula &f,
                                         const LassoTrace &trace);

} // namespace agc::ltl
