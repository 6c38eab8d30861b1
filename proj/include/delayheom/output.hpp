#pragma once

#include <ostream>
#include <string>

#include "delayheom/engine.hpp"

namespace delayheom::cli {

/// Formats with 17 significant digits, '.' separator.
std::string format_number(double value);

/// Header `time_fs,<var>_re,<var>_im,...`, one row per step, '\n' line endings.
void write_csv(std::ostream& out, const engine::SimOutput& sim);

}  // namespace delayheom::cli
