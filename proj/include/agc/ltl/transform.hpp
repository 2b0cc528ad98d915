#pragma once

#include "agc/ltl/formula.hpp"

namespace agc::ltl {

/// Structural clean-up, applied bottom-up until nothing changes:
/// constant folding (including the temporal operators), double negation,
/// idempotence of & and |, and absorption. Matching is structural, so the
/// result is semantically equivalent to the input but not a normal form.
Formula simplify(const Formula &f);

/// Negation normal form over {true, false, atoms, !atom, &, |, X, U, R}.
/// Implications, equivalences, F and G are eliminated.
Formula nnf(const Formula &f);

} // namespace agc::ltl
