/**
 * @file generators.hpp
 * @brief Hand-rolled random generators for property tests
 */

#pragma once

#include "dcmval/core/dataset.hpp"
#include "dcmval/description/model.hpp"
#include "dcmval/validation/condition.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dcmval::testkit {

using rng_t = std::mt19937_64;

/// Every If/And/Or tree of depth <= max_depth over `ids`, And/Or with two operands.
[[nodiscard]] std::vector<description::condition> all_binary_conditions(const std::vector<std::string>& ids,
                                                                        int max_depth);

[[nodiscard]] description::condition random_condition(rng_t& rng, const std::vector<std::string>& ids,
                                                      int max_depth);

/**
 * Module with up to max_requirements requirements, nested sequences up to
 * sq_depth, random defines, conditions, allowed values and table includes.
 * Used for print/parse fidelity.
 */
[[nodiscard]] description::module_description random_module(rng_t& rng, int max_requirements = 20,
                                                             int sq_depth = 2);

/// One requirement of a classification case, described independently of the model.
struct case_requirement {
    core::dicom_tag tag;
    core::vr_type vr{core::vr_type::CS};
    std::string vm;
    int type{1};
    std::optional<description::condition> cond;
    std::optional<std::vector<std::string>> allowed;
};

/// Value stored for one requirement's tag.
struct case_value {
    core::vr_type stored_vr{core::vr_type::CS};
    /// Text values (text VRs) or one entry per 16-bit value (US).
    std::vector<std::string> tokens;
    /// Encoding defects per token (0 or 1), known by construction.
    std::vector<int> token_defects;
};

struct classification_case {
    std::vector<std::string> ids;
    std::vector<case_requirement> requirements;
    std::vector<std::optional<case_value>> values;
    validation::answers given;
    validation::precondition_defaults defaults;
};

/// At most max_requirements requirements (types 1/2/3 with and without conditions), no sequences.
[[nodiscard]] classification_case random_case(rng_t& rng, int max_requirements = 6);

[[nodiscard]] description::module_description to_module(const classification_case& c);
[[nodiscard]] core::data_set to_data_set(const classification_case& c);

}  // namespace dcmval::testkit
