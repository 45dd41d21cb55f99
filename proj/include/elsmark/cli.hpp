#pragma once

namespace elsmark {

// Exit-code contract, kept scripting-friendly:
//   0 success, 1 I/O failure, 2 configuration/usage failure,
//   3 watermark detected while --fail-on-detect is set.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDetected = 3;

int run_cli(int argc, const char* const* argv);

}  // namespace elsmark
