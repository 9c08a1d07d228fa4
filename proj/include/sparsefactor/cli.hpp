#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sf::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kAlgorithmError = 1;
constexpr int kUsageError = 2;

// args excludes the program name.  JSON or CSV goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sf::cli
