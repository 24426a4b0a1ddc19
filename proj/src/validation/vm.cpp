/**
 * @file vm.cpp
 * @brief VM spec grammar
 */

#include "dcmval/validation/vm.hpp"

#include <charconv>
#include <string>

namespace dcmval::validation {

namespace {

std::optional<std::size_t> parse_number(std::string_view s) {
    if (s.empty() || s.size() > 6) {
        return std::nullopt;
    }
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

}  // namespace

bool vm_spec::accepts(std::size_t count) const noexcept {
    if (count < min) {
        return false;
    }
    if (max && count > *max) {
        return false;
    }
    return count % step == 0;
}

std::optional<vm_spec> parse_vm_spec(std::string_view text) noexcept {
    const auto dash = text.find('-');
    if (dash == std::string_view::npos) {
        auto k = parse_number(text);
        if (!k || *k == 0) {
            return std::nullopt;
        }
        return vm_spec{*k, *k, 1};
    }
    auto k = parse_number(text.substr(0, dash));
    const auto upper = text.substr(dash + 1);
    if (!k || *k == 0 || upper.empty()) {
        return std::nullopt;
    }
    if (upper == "n") {
        return vm_spec{*k, std::nullopt, 1};
    }
    if (upper.back() == 'n') {
        auto mult = parse_number(upper.substr(0, upper.size() - 1));
        if (!mult || *mult != *k) {
            return std::nullopt;
        }
        return vm_spec{*k, std::nullopt, *k};
    }
    auto m = parse_number(upper);
    if (!m || *m < *k) {
        return std::nullopt;
    }
    return vm_spec{*k, *m, 1};
}

bool check_vm(std::string_view spec, std::size_t count) {
    auto parsed = parse_vm_spec(spec);
    if (!parsed) {
        throw bad_vm_spec("bad VM spec '" + std::string(spec) + "'");
    }
    return parsed->accepts(count);
}

}  // namespace dcmval::validation
