#pragma once

#include "agc/ltl/formula.hpp"
#include "agc/ltl/lasso.hpp"

#include <cstddef>
#include <mutex>
#include <optional>
#include <unordered_map>

namespace agc::sat {

struct SatOptions {
  std::size_t ap_cap = 12;
};

struct SatResult {
  bool satisfiable = false;
  /// Present iff satisfiable; covers every atom of the checked formula.
  std::optional<ltl::LassoTrace> witness;
};

/// LTL satisfiability via simplify, nnf, tableau and SCC emptiness.
/// Results are cached by formula structure; the cache is thread-safe.
class Solver {
public:
  explicit Solver(SatOptions options = {});

  /// Throws ApCapExceeded when atoms(f) exceeds the configured cap.
  SatResult check(const ltl::Formula &f);
  bool is_satisfiable(const ltl::Formula &f);
  bool is_valid(const ltl::Formula &f);
  /// Validity of f <-> g.
  bool equivalent(const ltl::Formula &f, const ltl::Formula &g);

  const SatOptions &options() const noexcept { return options_; }
  std::size_t cache_size() const;
  void clear_cache();

private:
  SatOptions options_;
  mutable std::mutex mutex_;
  std::unordered_map<ltl::Formula, SatResult> cache_;
};

/// Process-wide solver with default options.
Solver &default_solver();

bool is_satisfiable(const ltl::Formula &f);
bool is_valid(const ltl::Formula &f);

} // namespace agc::sat
