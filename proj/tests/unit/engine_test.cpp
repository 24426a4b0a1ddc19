/**
 * @file engine_test.cpp
 * @brief Validation engine: decision table, categories, report properties
 */

#include "dcmval/validation/engine.hpp"
#include "dcmval/validation/report_format.hpp"

#include "fixtures.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace dcmval;
using namespace dcmval::validation;
using core::data_set;
using core::dicom_tag;
using core::vr_type;
using testkit::put;

namespace {

validation_report run(const data_set& data, const selection& sel = selection::all_modules(),
                      const answers& given = {}) {
    return validate(data, testkit::cr_iod(), *testkit::shipped_registry(), sel, given);
}

category result_of(const validation_report& r, std::string_view module) {
    const auto* m = r.find_module(module);
    EXPECT_NE(m, nullptr) << module;
    return m != nullptr ? m->result : category::valid;
}

const finding* find(const validation_report& r, std::string_view module, dicom_tag tag) {
    for (const auto& f : r.find_module(module)->findings) {
        if (f.tag == tag) {
            return &f;
        }
    }
    return nullptr;
}

std::vector<std::string> ids_of(const std::vector<description::precondition>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) {
        out.push_back(p.id);
    }
    return out;
}

void expect_category_invariants(const validation_report& r) {
    for (const auto& m : r.modules) {
        const bool any_error = std::any_of(m.findings.begin(), m.findings.end(),
                                           [](const finding& f) { return f.level == severity::error; });
        const bool any_warning = std::any_of(m.findings.begin(), m.findings.end(),
                                             [](const finding& f) { return f.level == severity::warning; });
        EXPECT_EQ(m.result == category::has_errors, any_error) << m.name;
        EXPECT_EQ(m.result == category::warning, any_warning && !any_error) << m.name;
        if (m.result == category::skipped || m.result == category::unsatisfied_condition ||
            m.result == category::valid) {
            EXPECT_TRUE(m.findings.empty()) << m.name;
        }
        for (const auto& f : m.findings) {
            if (f.kind == finding_kind::type3_non_conformant) {
                EXPECT_EQ(f.level, severity::warning);
            }
            if (f.kind == finding_kind::missing_type1 || f.kind == finding_kind::empty_type1 ||
                f.kind == finding_kind::missing_type2 || f.kind == finding_kind::condition_violated_missing) {
                EXPECT_EQ(f.level, severity::error);
            }
        }
    }
}

}  // namespace

TEST(EngineTest, ConformantFixtureIsValidWithDefaults) {
    const auto r = run(testkit::make_cr_dataset());
    ASSERT_EQ(r.modules.size(), 7u);
    for (const auto& m : r.modules) {
        EXPECT_EQ(m.result, category::valid) << m.name << " " << (m.findings.empty() ? "" : m.findings[0].message);
    }
    EXPECT_EQ(r.iod_name, "CR");
    EXPECT_EQ(r.sop_class_uid, testkit::cr_sop_class);
    EXPECT_EQ(r.summary().valid, 7);
    const answers expected{{"PatientIsAnAnimal", false}, {"ResponsiblePersonIsPresent", false},
                           {"contrasMediaWasUsed", true}};
    EXPECT_EQ(r.answers_used, expected);
}

TEST(EngineTest, ModuleResultsFollowIodOrder) {
    const auto r = run(testkit::make_cr_dataset());
    const auto& iod = testkit::cr_iod();
    for (std::size_t i = 0; i < iod.includes.size(); ++i) {
        EXPECT_EQ(r.modules[i].name, iod.includes[i].module_name);
        EXPECT_EQ(r.modules[i].ie, iod.includes[i].ie);
    }
}

TEST(EngineTest, ContrastBolusTypeOneItemElementsAbsent) {
    auto d = testkit::make_cr_dataset();
    data_set empty_code;
    put(empty_code, {0x0008, 0x0104}, vr_type::LO, "Iohexol");
    d.set(core::make_sequence({0x0018, 0x0012}, {empty_code}));
    const auto r = run(d);
    EXPECT_EQ(result_of(r, "ContrastBolus"), category::has_errors);
    const auto& findings = r.find_module("ContrastBolus")->findings;
    ASSERT_EQ(findings.size(), 2u);
    for (const auto& f : findings) {
        EXPECT_EQ(f.kind, finding_kind::missing_type1);
        EXPECT_EQ(f.path, "00180012[0]");
    }
}

TEST(EngineTest, ContrastAnsweredFalseIsUnsatisfied) {
    auto d = testkit::make_cr_dataset();
    d.erase({0x0018, 0x0010});
    const auto r = run(d, selection::all_modules(), {{"contrasMediaWasUsed", false}});
    EXPECT_EQ(result_of(r, "ContrastBolus"), category::unsatisfied_condition);
    EXPECT_TRUE(r.find_module("ContrastBolus")->findings.empty());
    EXPECT_FALSE(r.answers_used.at("contrasMediaWasUsed"));
}

TEST(EngineTest, DeselectedModuleIsSkipped) {
    const auto r = run(testkit::make_cr_dataset(),
                       selection::of({"Patient", "GeneralStudy", "GeneralSeries", "GeneralImage", "ContrastBolus",
                                      "SOPCommon"}));
    EXPECT_EQ(result_of(r, "PatientStudy"), category::skipped);
    EXPECT_EQ(r.summary().skipped, 1);
    EXPECT_EQ(r.summary().valid, 6);
}

TEST(EngineTest, UnselectedConditionalModuleIsSkippedNotUnsatisfied) {
    const auto r = run(testkit::make_cr_dataset(), selection::of({"Patient"}), {{"contrasMediaWasUsed", false}});
    EXPECT_EQ(result_of(r, "ContrastBolus"), category::skipped);
}

TEST(EngineTest, PatientSexOutsideValueList) {
    auto d = testkit::make_cr_dataset();
    put(d, core::tags::patient_sex, vr_type::CS, "X");
    const auto r = run(d);
    const auto* f = find(r, "Patient", core::tags::patient_sex);
    ASSERT_NE(f, nullptr);
    EXPECT_EQ(f->kind, finding_kind::value_not_allowed);
    EXPECT_EQ(f->level, severity::error);
    EXPECT_EQ(result_of(r, "Patient"), category::has_errors);
}

TEST(EngineTest, TypeTwoAbsentVersusEmpty) {
    auto d = testkit::make_cr_dataset();
    d.erase(core::tags::patient_name);
    auto r = run(d);
    const auto* f = find(r, "Patient", core::tags::patient_name);
    ASSERT_NE(f, nullptr);
    EXPECT_EQ(f->kind, finding_kind::missing_type2);

    put(d, core::tags::patient_name, vr_type::PN, "");
    r = run(d);
    EXPECT_EQ(find(r, "Patient", core::tags::patient_name), nullptr);
    EXPECT_EQ(result_of(r, "Patient"), category::valid);
}

TEST(EngineTest, TypeOneAbsentAndEmpty) {
    auto d = testkit::make_cr_dataset();
    d.erase(core::tags::study_instance_uid);
    auto r = run(d);
    EXPECT_EQ(find(r, "GeneralStudy", core::tags::study_instance_uid)->kind, finding_kind::missing_type1);
    put(d, core::tags::study_instance_uid, vr_type::UI, "");
    r = run(d);
    EXPECT_EQ(find(r, "GeneralStudy", core::tags::study_instance_uid)->kind, finding_kind::empty_type1);
}

TEST(EngineTest, TypeThreeDefectIsWarning) {
    auto d = testkit::make_cr_dataset();
    put(d, core::tags::patient_age, vr_type::AS, "45Y");
    const auto r = run(d);
    EXPECT_EQ(result_of(r, "PatientStudy"), category::warning);
    const auto* f = find(r, "PatientStudy", core::tags::patient_age);
    ASSERT_NE(f, nullptr);
    EXPECT_EQ(f->kind, finding_kind::type3_non_conformant);
    EXPECT_EQ(f->level, severity::warning);
    EXPECT_EQ(f->message.rfind("EncodingInvalid: ", 0), 0u) << f->message;
}

TEST(EngineTest, TypeThreeAbsenceIsConformant) {
    auto d = testkit::make_cr_dataset();
    d.erase(core::tags::patient_age);
    d.erase({0x0010, 0x1030});
    EXPECT_EQ(result_of(run(d), "PatientStudy"), category::valid);
}

TEST(EngineTest, ConditionalElementPresentWhenConditionFalse) {
    auto d = testkit::make_cr_dataset();
    put(d, {0x0010, 0x2201}, vr_type::LO, "Canine");
    const auto r = run(d);
    const auto* f = find(r, "Patient", {0x0010, 0x2201});
    ASSERT_NE(f, nullptr);
    EXPECT_EQ(f->kind, finding_kind::unexpected_conditional);
    EXPECT_EQ(f->level, severity::error);
}

TEST(EngineTest, ConditionMetButElementAbsent) {
    const auto r = run(testkit::make_cr_dataset(), selection::all_modules(), {{"PatientIsAnAnimal", true}});
    const auto& findings = r.find_module("Patient")->findings;
    ASSERT_EQ(findings.size(), 2u);
    EXPECT_EQ(findings[0].tag, (dicom_tag{0x0010, 0x2201}));
    EXPECT_EQ(findings[1].tag, (dicom_tag{0x0010, 0x2292}));
    for (const auto& f : findings) {
        EXPECT_EQ(f.kind, finding_kind::condition_violated_missing);
    }
}

TEST(EngineTest, FindingsOrderedByTypeThenTag) {
    auto d = testkit::make_cr_dataset();
    d.erase(core::tags::patient_name);
    d.erase(core::tags::patient_id);
    put(d, core::tags::patient_sex, vr_type::CS, "X");
    const auto r = run(d, selection::all_modules(), {{"PatientIsAnAnimal", true}, {"ResponsiblePersonIsPresent", true}});
    std::vector<std::string> order;
    for (const auto& f : r.find_module("Patient")->findings) {
        order.push_back(f.keyword);
    }
    // 1C, 1C(And) then 2, 2, 2, then 2C elements.
    const std::vector<std::string> expected{"PatientSpeciesDescription", "ResponsiblePersonRole", "PatientName",
                                            "PatientID", "PatientSex", "PatientBreedDescription",
                                            "ResponsiblePerson"};
    EXPECT_EQ(order, expected);
}

TEST(EngineTest, VrMismatchSuppressesContentChecks) {
    auto d = testkit::make_cr_dataset();
    put(d, core::tags::patient_sex, vr_type::LO, "unknown value");
    const auto r = run(d);
    const auto& findings = r.find_module("Patient")->findings;
    ASSERT_EQ(findings.size(), 1u);
    EXPECT_EQ(findings[0].kind, finding_kind::vr_mismatch);
}

TEST(EngineTest, UnknownVrIsCompatible) {
    auto d = testkit::make_cr_dataset();
    auto e = core::make_text_element(core::tags::patient_sex, vr_type::CS, "F");
    e.vr = vr_type::UN;
    d.set(e);
    EXPECT_EQ(result_of(run(d), "Patient"), category::valid);
}

TEST(EngineTest, VmViolation) {
    auto d = testkit::make_cr_dataset();
    put(d, {0x0020, 0x0020}, vr_type::CS, "A");
    const auto r = run(d);
    const auto* f = find(r, "GeneralImage", {0x0020, 0x0020});
    ASSERT_NE(f, nullptr);
    EXPECT_EQ(f->kind, finding_kind::vm_violation);
}

TEST(EngineTest, ItemCountAndNestedPaths) {
    auto d = testkit::make_cr_dataset();
    data_set a;
    put(a, {0x0040, 0x0033}, vr_type::CS, "ISO");
    data_set b;
    put(b, {0x0040, 0x0033}, vr_type::CS, "BOGUS");
    d.set(core::make_sequence({0x0010, 0x0024}, {a, b}));
    const auto r = run(d);
    EXPECT_EQ(result_of(r, "Patient"), category::warning);
    const auto& findings = r.find_module("Patient")->findings;
    ASSERT_EQ(findings.size(), 2u);
    bool saw_count = false;
    bool saw_nested = false;
    for (const auto& f : findings) {
        EXPECT_EQ(f.kind, finding_kind::type3_non_conformant);
        if (f.tag == dicom_tag{0x0010, 0x0024}) {
            saw_count = f.message.rfind("ItemCountViolation: ", 0) == 0;
            EXPECT_EQ(f.path, "");
        } else {
            saw_nested = true;
            EXPECT_EQ(f.path, "00100024[1]");
            EXPECT_EQ(f.message.rfind("ValueNotAllowed: ", 0), 0u);
        }
    }
    EXPECT_TRUE(saw_count);
    EXPECT_TRUE(saw_nested);
}

TEST(EngineTest, CollectQuestions) {
    const auto& iod = testkit::cr_iod();
    const auto& reg = *testkit::shipped_registry();
    EXPECT_EQ(ids_of(collect_questions(iod, reg, selection::all_modules())),
              (std::vector<std::string>{"contrasMediaWasUsed", "PatientIsAnAnimal", "ResponsiblePersonIsPresent"}));
    EXPECT_TRUE(collect_questions(iod, reg, selection::of({"GeneralStudy"})).empty());
    EXPECT_EQ(ids_of(collect_questions(iod, reg, selection::of({"Patient"}))),
              (std::vector<std::string>{"PatientIsAnAnimal", "ResponsiblePersonIsPresent"}));
    const auto q = collect_questions(iod, reg, selection::of({"ContrastBolus"}));
    ASSERT_EQ(q.size(), 1u);
    EXPECT_EQ(q[0].question, "Was contrast media used in this Image");
    EXPECT_TRUE(q[0].default_value);
}

TEST(EngineTest, UnknownModuleNames) {
    EXPECT_EQ(unknown_modules(testkit::cr_iod(), selection::of({"Patient", "Nope"})),
              std::vector<std::string>{"Nope"});
    EXPECT_TRUE(unknown_modules(testkit::cr_iod(), selection::all_modules()).empty());
}

TEST(EngineTest, UnresolvedModuleThrows) {
    description::registry empty;
    EXPECT_THROW((void)validate(testkit::make_cr_dataset(), testkit::cr_iod(), empty, selection::all_modules(), {}),
                 unresolved_module);
}

TEST(EngineTest, UnmentionedElementsProduceNoFindings) {
    auto d = testkit::make_cr_dataset();
    put(d, {0x0018, 0x1030}, vr_type::LO, std::string(200, 'x'));
    put(d, {0x0009, 0x1001}, vr_type::LO, "private");
    const auto r = run(d);
    EXPECT_EQ(r.summary().valid, 7);
}

TEST(EngineTest, SelectionMonotonicity) {
    auto d = testkit::make_cr_dataset();
    d.erase(core::tags::patient_name);
    put(d, core::tags::patient_age, vr_type::AS, "45Y");
    const auto full = run(d);
    for (const auto& removed : full.modules) {
        std::set<std::string> names;
        for (const auto& m : full.modules) {
            if (m.name != removed.name) {
                names.insert(m.name);
            }
        }
        const auto partial = run(d, selection::of(names));
        for (std::size_t i = 0; i < full.modules.size(); ++i) {
            if (full.modules[i].name == removed.name) {
                EXPECT_EQ(partial.modules[i].result, category::skipped);
                EXPECT_TRUE(partial.modules[i].findings.empty());
            } else {
                EXPECT_EQ(partial.modules[i], full.modules[i]);
            }
        }
    }
}

TEST(EngineTest, AnswerSoundness) {
    const auto d = testkit::make_cr_dataset();
    for (bool v : {false, true}) {
        const auto base = run(d, selection::of({"GeneralStudy", "GeneralSeries"}));
        const auto flipped = run(d, selection::of({"GeneralStudy", "GeneralSeries"}),
                                 {{"PatientIsAnAnimal", v}, {"contrasMediaWasUsed", v}});
        EXPECT_EQ(base, flipped);
        EXPECT_TRUE(flipped.answers_used.empty());
    }
}

TEST(EngineTest, DeterministicRendering) {
    auto d = testkit::make_cr_dataset();
    d.erase(core::tags::patient_id);
    const auto a = render_json(run(d));
    const auto b = render_json(run(d));
    EXPECT_EQ(a, b);
}

TEST(EngineTest, CategoryInvariantsOnMutatedFixtures) {
    testkit::rng_t rng(909);
    const auto base = testkit::make_cr_dataset();
    std::vector<dicom_tag> tags;
    for (const auto& [tag, e] : base) {
        tags.push_back(tag);
    }
    for (int i = 0; i < 200; ++i) {
        auto d = base;
        for (int k = 0; k < 4; ++k) {
            const auto tag = tags[rng() % tags.size()];
            switch (rng() % 3) {
                case 0: d.erase(tag); break;
                case 1: put(d, tag, vr_type::LO, ""); break;
                default: put(d, tag, vr_type::CS, "bad value!"); break;
            }
        }
        answers given;
        for (const char* id : {"contrasMediaWasUsed", "PatientIsAnAnimal", "ResponsiblePersonIsPresent"}) {
            if (rng() % 2) {
                given[id] = rng() % 2;
            }
        }
        expect_category_invariants(run(d, selection::all_modules(), given));
    }
}

TEST(EngineTest, ClassificationMatchesBruteForceOracle) {
    testkit::rng_t rng(20240115);
    description::registry reg;
    std::map<std::string, int> seen;
    for (int i = 0; i < 3000; ++i) {
        const auto c = testkit::random_case(rng, 6);
        const auto module = testkit::to_module(c);
        const auto findings = validate_module(testkit::to_data_set(c), module, reg, c.given, {});
        const auto expected = testkit::brute_force_classify(c);

        std::vector<testkit::finding_key> actual;
        for (const auto& f : findings) {
            actual.emplace_back(f.tag.to_string(), std::string(to_string(f.level)), std::string(to_string(f.kind)));
        }
        std::sort(actual.begin(), actual.end());
        ASSERT_EQ(std::string(to_string(categorize(findings))), expected.category) << "case " << i;
        ASSERT_EQ(actual, expected.findings) << "case " << i;
        ++seen[expected.category];
        for (const auto& k : expected.findings) {
            ++seen[std::get<2>(k)];
        }
    }
    for (const char* key : {"VALID", "WARNING", "HAS_ERRORS", "MissingType1", "EmptyType1", "MissingType2",
                            "VrMismatch", "VmViolation", "ValueNotAllowed", "EncodingInvalid",
                            "ConditionViolatedMissing", "Type3NonConformant", "UnexpectedConditional"}) {
        EXPECT_GT(seen[key], 0) << key << " never generated";
    }
}

TEST(ReportFormatTest, JsonShapeAndKeyOrder) {
    auto d = testkit::make_cr_dataset();
    d.erase(core::tags::patient_name);
    auto r = run(d);
    r.validation_id = "abc";
    const auto j = to_json(r);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) {
        keys.push_back(k);
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"validationId", "sopClassUid", "iod", "summary", "modules",
                                              "answersUsed"}));
    EXPECT_EQ(j["summary"]["hasErrors"], 1);
    const auto& patient = j["modules"][0];
    EXPECT_EQ(patient["name"], "Patient");
    EXPECT_EQ(patient["category"], "HAS_ERRORS");
    const auto& f = patient["findings"][0];
    std::vector<std::string> fkeys;
    for (const auto& [k, v] : f.items()) {
        fkeys.push_back(k);
    }
    EXPECT_EQ(fkeys, (std::vector<std::string>{"tag", "keyword", "severity", "kind", "path", "message"}));
    EXPECT_EQ(f["tag"], "00100010");
    EXPECT_EQ(f["severity"], "Error");
    EXPECT_EQ(f["kind"], "MissingType2");
    EXPECT_EQ(j["answersUsed"]["contrasMediaWasUsed"], true);
}

TEST(ReportFormatTest, FilterIsRenderOnly) {
    auto d = testkit::make_cr_dataset();
    put(d, core::tags::patient_age, vr_type::AS, "45Y");
    const auto r = run(d);
    output_filter errors_only;
    errors_only.severities = {severity::error};
    const auto all = to_json(r);
    const auto filtered = to_json(r, errors_only);
    EXPECT_EQ(all["summary"], filtered["summary"]);
    EXPECT_EQ(all["modules"][2]["findings"].size(), 1u);
    EXPECT_EQ(filtered["modules"][2]["findings"].size(), 0u);
    EXPECT_EQ(filtered["modules"][2]["category"], "WARNING");
}

TEST(ReportFormatTest, TextRendering) {
    auto d = testkit::make_cr_dataset();
    d.erase(core::tags::patient_name);
    const auto text = render_text(run(d));
    EXPECT_NE(text.find("[HAS_ERRORS] Patient (Patient)"), std::string::npos) << text;
    EXPECT_NE(text.find("MissingType2"), std::string::npos);
    EXPECT_NE(text.find("[VALID] SOPCommon (Image)"), std::string::npos);
    EXPECT_NE(text.find("Summary"), std::string::npos);
}
