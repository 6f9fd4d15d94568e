#pragma once

#include "oscillax/config.hpp"

namespace oscillax {

/// Exit codes: 0 pass, 1 invariant failure, 2 usage or runtime error.
/// Each command writes its artifacts under cfg.out (created if missing).
int cmd_build_symbol(const RunConfig& cfg);
int cmd_check_class(const RunConfig& cfg);
int cmd_blowup(const RunConfig& cfg);
int cmd_crosscheck(const RunConfig& cfg);

}  // namespace oscillax
