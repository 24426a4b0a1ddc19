/**
 * @file printer.hpp
 * @brief Canonical XML rendering of description models
 */

#pragma once

#include "dcmval/description/model.hpp"

#include <string>

namespace dcmval::description {

[[nodiscard]] std::string print_iod(const iod_description& iod);
[[nodiscard]] std::string print_module(const module_description& module);
[[nodiscard]] std::string print_table(const macro_table& table);

}  // namespace dcmval::description
