#pragma once

#include <cstdint>
#include <vector>

#include "serialization.hpp"

namespace daafd {

// Randomized cross-module property suites behind the `verify` subcommand:
// kernel identity, agreement of the two factor closed forms, coisometry of
// factors and short chains on the sphere, the Gleason reconstruction identity
// and the eigenvalue identity of the factor-difference core matrix.
// inject_fault shifts every residual and is only a negative control.
std::vector<VerifyRow> run_verification(int ncases, uint64_t seed, bool inject_fault);

bool all_pass(const std::vector<VerifyRow>& rows);

}  // namespace daafd
