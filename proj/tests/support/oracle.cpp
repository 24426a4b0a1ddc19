/**
 * @file oracle.cpp
 * @brief Reference checkers
 */

#include "oracle.hpp"

#include <algorithm>
#include <charconv>

namespace dcmval::testkit {

using description::condition;

std::uint32_t truth_mask(const condition& cond, const std::vector<std::string>& ids) {
    const std::size_t rows = std::size_t{1} << ids.size();
    const std::uint32_t all = rows >= 32 ? 0xFFFFFFFFu : ((1u << rows) - 1u);
    switch (cond.kind) {
        case condition::op::if_: {
            const auto it = std::find(ids.begin(), ids.end(), cond.idref);
            if (it == ids.end()) {
                return 0;
            }
            const auto k = static_cast<std::size_t>(it - ids.begin());
            std::uint32_t mask = 0;
            for (std::size_t row = 0; row < rows; ++row) {
                if ((row >> k) & 1u) {
                    mask |= 1u << row;
                }
            }
            return mask;
        }
        case condition::op::and_: {
            std::uint32_t mask = all;
            for (const auto& c : cond.children) {
                mask &= truth_mask(c, ids);
            }
            return mask;
        }
        case condition::op::or_: {
            std::uint32_t mask = 0;
            for (const auto& c : cond.children) {
                mask |= truth_mask(c, ids);
            }
            return mask;
        }
    }
    return 0;
}

namespace {

std::size_t assignment_row(const classification_case& c) {
    std::size_t row = 0;
    for (std::size_t k = 0; k < c.ids.size(); ++k) {
        const auto& id = c.ids[k];
        const auto g = c.given.find(id);
        const bool value = g != c.given.end() ? g->second : c.defaults.at(id);
        if (value) {
            row |= std::size_t{1} << k;
        }
    }
    return row;
}

std::string tag_text(const case_requirement& r) {
    return r.tag.to_string();
}

}  // namespace

oracle_outcome brute_force_classify(const classification_case& c) {
    const auto row = assignment_row(c);
    std::vector<finding_key> found;

    for (std::size_t i = 0; i < c.requirements.size(); ++i) {
        const auto& r = c.requirements[i];
        const auto& v = c.values[i];
        const auto tag = tag_text(r);
        const bool applies = !r.cond || ((truth_mask(*r.cond, c.ids) >> row) & 1u);

        if (!applies) {
            if (v) {
                if (r.type == 3) {
                    found.emplace_back(tag, "Warning", "Type3NonConformant");
                } else {
                    found.emplace_back(tag, "Error", "UnexpectedConditional");
                }
            }
            continue;
        }
        if (!v) {
            if (r.type == 3) {
                continue;
            }
            if (r.cond) {
                found.emplace_back(tag, "Error", "ConditionViolatedMissing");
            } else {
                found.emplace_back(tag, "Error", r.type == 1 ? "MissingType1" : "MissingType2");
            }
            continue;
        }
        if (v->tokens.empty()) {
            if (r.type == 1) {
                found.emplace_back(tag, "Error", "EmptyType1");
            }
            continue;
        }

        std::vector<std::string> kinds;
        if (v->stored_vr != r.vr) {
            kinds.emplace_back("VrMismatch");
        } else {
            if (!oracle_vm(r.vm, v->tokens.size())) {
                kinds.emplace_back("VmViolation");
            }
            if (r.allowed) {
                for (const auto& t : v->tokens) {
                    if (std::find(r.allowed->begin(), r.allowed->end(), t) == r.allowed->end()) {
                        kinds.emplace_back("ValueNotAllowed");
                    }
                }
            }
            for (int d : v->token_defects) {
                for (int k = 0; k < d; ++k) {
                    kinds.emplace_back("EncodingInvalid");
                }
            }
        }
        for (const auto& k : kinds) {
            if (r.type == 3) {
                found.emplace_back(tag, "Warning", "Type3NonConformant");
            } else {
                found.emplace_back(tag, "Error", k);
            }
        }
    }

    oracle_outcome out;
    const bool any_error =
        std::any_of(found.begin(), found.end(), [](const finding_key& f) { return std::get<1>(f) == "Error"; });
    out.category = any_error ? "HAS_ERRORS" : (found.empty() ? "VALID" : "WARNING");
    std::sort(found.begin(), found.end());
    out.findings = std::move(found);
    return out;
}

bool oracle_vm(const std::string& spec, std::size_t count) {
    const auto number = [](std::string_view s) -> std::optional<std::size_t> {
        std::size_t v = 0;
        const auto* end = s.data() + s.size();
        const auto r = std::from_chars(s.data(), end, v);
        if (s.empty() || r.ec != std::errc{} || r.ptr != end) {
            return std::nullopt;
        }
        return v;
    };
    const auto dash = spec.find('-');
    if (dash == std::string::npos) {
        const auto k = number(spec);
        return k && count == *k;
    }
    const auto lo = number(std::string_view(spec).substr(0, dash));
    const std::string hi = spec.substr(dash + 1);
    if (!lo) {
        return false;
    }
    if (hi == "n") {
        return count >= *lo;
    }
    if (hi.size() > 1 && hi.back() == 'n') {
        const auto step = number(std::string_view(hi).substr(0, hi.size() - 1));
        if (!step || *step != *lo || *lo == 0) {
            return false;
        }
        for (std::size_t m = *lo; m <= count; m += *lo) {
            if (m == count) {
                return true;
            }
        }
        return false;
    }
    const auto upper = number(hi);
    if (!upper) {
        return false;
    }
    for (std::size_t m = *lo; m <= *upper; ++m) {
        if (m == count) {
            return true;
        }
    }
    return false;
}

}  // namespace dcmval::testkit
