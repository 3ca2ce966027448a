#pragma once

#include "fcl/env.hpp"

namespace fcl {

/// Fresh environment frame binding the builtin library, the arithmetic and
/// comparison operators, and the fc / stage_list special forms.
EnvPtr base_environment();

} // namespace fcl
