/**
 * @file commands.hpp
 * @brief dcmval command line: validate, deident, lint, serve
 */

#pragma once

#include "dcmval/validation/condition.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace dcmval::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_findings = 1;
inline constexpr int exit_operational = 2;

/// Runs one command; all I/O goes through the given streams.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

/// "k=v,k2=v2" with v in true/false/yes/no/y/n/1/0. nullopt on syntax errors.
[[nodiscard]] std::optional<validation::answers> parse_answer_list(std::string_view text);

/// "Question [Y/n]: " for a true default, "Question [y/N]: " otherwise.
[[nodiscard]] std::string prompt_text(std::string_view question, bool default_value);

/// Repository used when --repo is absent: $DCMVAL_REPO, else ./descriptions.
[[nodiscard]] std::string default_repository();

}  // namespace dcmval::cli
