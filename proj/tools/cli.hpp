#pragma once

#include <iosfwd>

namespace wikisyn::cli {

// Exit codes of the wikisyn command.
inline constexpr int kOk = 0;
inline constexpr int kUnknownWord = 1;
inline constexpr int kBadFlags = 2;
inline constexpr int kCorpusLoadFailure = 3;
inline constexpr int kPortUnavailable = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wikisyn::cli
