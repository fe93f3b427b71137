#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace permlab::cli {

inline constexpr std::string_view kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRefused = 3;

/// Runs one invocation. `args` excludes the program name. Every JSON document
/// goes to `out` on a single line; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Arguments that reproduce a document printed by run(): the command tokens
/// followed by every recorded flag.
std::vector<std::string> replay_args(const nlohmann::json& doc);

/// Copy of the document without its timestamp.
nlohmann::json without_timestamp(nlohmann::json doc);

}  // namespace permlab::cli
