#pragma once

namespace ldlcpkc {

// Command-line entry point, callable in-process. Exit codes: 0 success,
// 1 usage or parameter error, 2 malformed file, 3 decode failure / REJECT,
// 4 guard violation (exhaustive-oracle dimension and similar).
int cli_main(int argc, const char* const* argv);

}  // namespace ldlcpkc
