#pragma once

#include <CLI11.hpp>

namespace cmrf::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCapacity = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

/// Each register_* adds a subcommand whose callback stores its exit status
/// in `status`.
void register_solve(CLI::App& app, int& status);
void register_bench(CLI::App& app, int& status);
void register_restore(CLI::App& app, int& status);
void register_stereo(CLI::App& app, int& status);
void register_synth(CLI::App& app, int& status);
void register_verify(CLI::App& app, int& status);

}  // namespace cmrf::cli
