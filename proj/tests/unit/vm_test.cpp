/**
 * @file vm_test.cpp
 * @brief Value Multiplicity specs
 */

#include "dcmval/validation/vm.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace dcmval::validation;

TEST(VmTest, Examples) {
    EXPECT_TRUE(check_vm("1", 1));
    EXPECT_FALSE(check_vm("1", 2));
    EXPECT_TRUE(check_vm("2-2n", 6));
    EXPECT_FALSE(check_vm("2-2n", 3));
    EXPECT_FALSE(check_vm("1-n", 0));
    EXPECT_TRUE(check_vm("1-n", 100));
    EXPECT_TRUE(check_vm("1-3", 3));
    EXPECT_FALSE(check_vm("1-3", 4));
    EXPECT_TRUE(check_vm("3-3n", 9));
    EXPECT_FALSE(check_vm("3-3n", 10));
}

TEST(VmTest, BadSpecsThrow) {
    for (const char* spec : {"", "n", "0", "0-n", "0-2", "a", "1-", "-1", "3-1", "2-3n", "1-n-2", " 1", "1 "}) {
        EXPECT_THROW((void)check_vm(spec, 1), bad_vm_spec) << '"' << spec << '"';
        EXPECT_FALSE(parse_vm_spec(spec)) << '"' << spec << '"';
    }
}

TEST(VmTest, AgreesWithEnumerationOracle) {
    std::vector<std::string> specs;
    for (int k = 1; k <= 6; ++k) {
        specs.push_back(std::to_string(k));
        specs.push_back(std::to_string(k) + "-n");
        specs.push_back(std::to_string(k) + "-" + std::to_string(k) + "n");
        for (int m = k; m <= 8; ++m) {
            specs.push_back(std::to_string(k) + "-" + std::to_string(m));
        }
    }
    for (const auto& spec : specs) {
        for (std::size_t count = 0; count <= 40; ++count) {
            EXPECT_EQ(check_vm(spec, count), dcmval::testkit::oracle_vm(spec, count)) << spec << " " << count;
        }
    }
}
