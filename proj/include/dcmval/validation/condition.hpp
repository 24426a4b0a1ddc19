/**
 * @file condition.hpp
 * @brief Precondition answers and condition evaluation
 */

#pragma once

#include "dcmval/description/model.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace dcmval::validation {

/// Precondition id -> answer.
using answers = std::map<std::string, bool>;

/// Precondition id -> default value, for the ids in scope.
using precondition_defaults = std::map<std::string, bool>;

class unknown_idref : public std::runtime_error {
public:
    explicit unknown_idref(std::string id);

    [[nodiscard]] const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

/**
 * If(x) takes answers[x], falling back to defaults[x]; And/Or combine children.
 * Every id looked up is recorded in @p consulted when given.
 */
[[nodiscard]] bool evaluate_condition(const description::condition& cond, const answers& given,
                                      const precondition_defaults& defaults,
                                      std::set<std::string>* consulted = nullptr);

}  // namespace dcmval::validation
