#pragma once

#include "pqb/operators.hpp"

namespace pqb {

/// Built-in target functions on [0,1]: exactly reproduced, smooth, and
/// rough Lipschitz cases. Names: one, t, t2, t3, sin_pi, exp, abs_half,
/// sqrt_abs_half.
const std::vector<FunctionBundle>& corpus();

/// nullptr when the name is unknown.
const FunctionBundle* find_corpus(const std::string& name);

}  // namespace pqb
