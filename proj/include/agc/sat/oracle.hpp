#pragma once

#include "agc/ltl/formula.hpp"
#include "agc/ltl/lasso.hpp"
#include "agc/simd/bitvec.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace agc::sat {

inline constexpr std::size_t kOracleMaxAtoms = 4;
inline constexpr std::size_t kOracleMaxBound = 8;

struct OracleOptions {
  /// Kernel table to evaluate with; null selects the active backend.
  const simd::KernelTable *kernels = nullptr;
};

/// Brute-force search for a lasso of total length <= bound satisfying `f`.
///
/// Shapes are tried by increasing length, then increasing loop length, then
/// by assignment index (atom values packed position-major, atoms sorted), so
/// the first hit is deterministic. One-sided: nullopt does not prove
/// unsatisfiability. Throws Error when |atoms(f)| > 4 or bound > 8.
std::optional<ltl::LassoTrace> lasso_oracle(const ltl::Formula &f,
                                            std::size_t bound,
                                            const OracleOptions &options = {});

/// Truth of `f` at position 0 for every assignment of a lasso shape.
/// Bit i of the result corresponds to assignment_trace(aps, prefix_len,
/// loop_len, i). Requires atoms(f) within `aps` and
/// aps.size() * (prefix_len + loop_len) <= 24.
std::vector<simd::Word>
evaluate_all_assignments(const ltl::Formula &f,
                         const std::vector<std::string> &aps,
                         std::size_t prefix_len, std::size_t loop_len,
                         const OracleOptions &options = {});

/// Decodes assignment index `index` into a trace: variable
/// position * |aps| + atom is bit (that variable) of `index`.
ltl::LassoTrace assignment_trace(const std::vector<std::string> &aps,
                                 std::size_t prefix_len, std::size_t loop_len,
                                 std::uint64_t index);

} // namespace agc::sat
