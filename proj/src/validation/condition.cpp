/**
 * @file condition.cpp
 * @brief Condition evaluation
 */

#include "dcmval/validation/condition.hpp"

namespace dcmval::validation {

unknown_idref::unknown_idref(std::string id)
    : std::runtime_error("UnknownIdref: precondition '" + id + "' is not in scope"), id_(std::move(id)) {}

bool evaluate_condition(const description::condition& cond, const answers& given,
                        const precondition_defaults& defaults, std::set<std::string>* consulted) {
    using op = description::condition::op;
    switch (cond.kind) {
        case op::if_: {
            auto def = defaults.find(cond.idref);
            if (def == defaults.end()) {
                throw unknown_idref(cond.idref);
            }
            if (consulted != nullptr) {
                consulted->insert(cond.idref);
            }
            auto it = given.find(cond.idref);
            return it != given.end() ? it->second : def->second;
        }
        case op::and_: {
            bool result = true;
            for (const auto& c : cond.children) {
                result = evaluate_condition(c, given, defaults, consulted) && result;
            }
            return result;
        }
        case op::or_: {
            bool result = false;
            for (const auto& c : cond.children) {
                result = evaluate_condition(c, given, defaults, consulted) || result;
            }
            return result;
        }
    }
    return false;
}

}  // namespace dcmval::validation
