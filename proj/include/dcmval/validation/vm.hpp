/**
 * @file vm.hpp
 * @brief Value Multiplicity specs: "k", "k-m", "k-n", "k-kn"
 */

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace dcmval::validation {

struct vm_spec {
    std::size_t min{1};
    /// nullopt for unbounded ("k-n", "k-kn").
    std::optional<std::size_t> max{1};
    /// Count must be a multiple of this ("k-kn"), 1 otherwise.
    std::size_t step{1};

    [[nodiscard]] bool accepts(std::size_t count) const noexcept;
};

class bad_vm_spec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

[[nodiscard]] std::optional<vm_spec> parse_vm_spec(std::string_view text) noexcept;

/// Throws bad_vm_spec when `spec` does not follow the grammar.
[[nodiscard]] bool check_vm(std::string_view spec, std::size_t count);

}  // namespace dcmval::validation
