#pragma once

namespace hzeta::cli {

// Parses argv, runs the selected experiment, emits the report.
// Exit codes: 0 success, 1 numeric failure (partial rows flushed),
// 2 flag/usage errors.
int run(int argc, const char* const* argv);

}  // namespace hzeta::cli
