/**
 * @file cli_test.cpp
 * @brief Command-line front end driven through in-memory streams
 */

#include "dcmval/cli/commands.hpp"
#include "dcmval/validation/report_format.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace dcmval;
using testkit::put;
namespace fs = std::filesystem;

namespace {

struct cli_result {
    int code;
    std::string out;
    std::string err;
};

cli_result run(std::vector<std::string> args, const std::string& input = {}) {
    args.insert(args.begin(), "dcmval");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("dcmval_cli_" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    std::string write_file(const std::string& name, core::data_set d) {
        const auto path = dir_ / name;
        core::write_bytes(path, testkit::to_bytes(testkit::make_file(std::move(d))));
        return path.string();
    }
    std::string write_text(const std::string& name, std::string_view text) {
        const auto path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }
    [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }
    [[nodiscard]] std::string repo() const { return testkit::descriptions_dir().string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ValidateDefaultsJson) {
    const auto file = write_file("cr.dcm", testkit::make_cr_dataset());
    const auto r = run({"validate", file, "--repo", repo(), "--defaults", "--format", "json"});
    EXPECT_EQ(r.code, cli::exit_ok) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["iod"], "CR");
    EXPECT_EQ(j["modules"][5]["name"], "ContrastBolus");
    EXPECT_EQ(j["modules"][5]["category"], "VALID");
    EXPECT_EQ(j["answersUsed"]["contrasMediaWasUsed"], true);
}

TEST_F(CliTest, ValidateNoDeidentMatchesEngine) {
    auto d = testkit::make_cr_dataset();
    d.erase(core::tags::patient_id);
    const auto file = write_file("cr.dcm", d);
    const auto r = run({"validate", file, "--repo", repo(), "--no-deident", "--answers",
                        "contrasMediaWasUsed=false,PatientIsAnAnimal=no", "--format", "json"});
    EXPECT_EQ(r.code, cli::exit_findings);
    const auto expected = validation::validate(d, testkit::cr_iod(), *testkit::shipped_registry(),
                                               validation::selection::all_modules(),
                                               {{"contrasMediaWasUsed", false}, {"PatientIsAnAnimal", false}});
    EXPECT_EQ(r.out, validation::render_json(expected));
}

TEST_F(CliTest, AnswersMakeContrastUnsatisfied) {
    const auto file = write_file("cr.dcm", testkit::make_cr_dataset());
    const auto r = run({"validate", file, "--repo", repo(), "--answers", "contrasMediaWasUsed=false", "--modules",
                        "all", "--format", "json"});
    EXPECT_EQ(r.code, cli::exit_ok);
    EXPECT_EQ(nlohmann::json::parse(r.out)["modules"][5]["category"], "UNSATISFIED_CONDITION");
}

TEST_F(CliTest, ModuleSelection) {
    const auto file = write_file("cr.dcm", testkit::make_cr_dataset());
    const auto r = run({"validate", file, "--repo", repo(), "--modules", "Patient,SOPCommon", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["summary"]["skipped"], 5);
    EXPECT_EQ(j["summary"]["valid"], 2);
    EXPECT_EQ(run({"validate", file, "--repo", repo(), "--modules", "Patient,Nope"}).code, cli::exit_operational);
}

TEST_F(CliTest, SeverityFilterIsRenderOnly) {
    auto d = testkit::make_cr_dataset();
    put(d, core::tags::patient_age, core::vr_type::AS, "45Y");
    const auto file = write_file("cr.dcm", d);
    const auto all = run({"validate", file, "--repo", repo(), "--defaults", "--format", "json"});
    const auto errors = run({"validate", file, "--repo", repo(), "--defaults", "--format", "json", "--severity", "error"});
    const auto ja = nlohmann::json::parse(all.out);
    const auto je = nlohmann::json::parse(errors.out);
    EXPECT_EQ(ja["summary"], je["summary"]);
    EXPECT_EQ(ja["summary"]["warning"], 1);
    EXPECT_EQ(ja["modules"][2]["findings"].size(), 1u);
    EXPECT_EQ(je["modules"][2]["findings"].size(), 0u);
    EXPECT_EQ(all.code, cli::exit_ok);
    EXPECT_EQ(run({"validate", file, "--repo", repo(), "--severity", "warning"}).code, cli::exit_findings);
}

TEST_F(CliTest, TextFormatIsDefault) {
    const auto file = write_file("cr.dcm", testkit::make_cr_dataset());
    const auto r = run({"validate", file, "--repo", repo()});
    EXPECT_NE(r.out.find("[VALID] Patient (Patient)"), std::string::npos) << r.out;
}

TEST_F(CliTest, ValidateOperationalErrors) {
    EXPECT_EQ(run({"validate", path("missing.dcm"), "--repo", repo()}).code, cli::exit_operational);
    const auto garbage = write_text("garbage.dcm", "not a dicom file");
    EXPECT_EQ(run({"validate", garbage, "--repo", repo()}).code, cli::exit_operational);
    auto d = testkit::make_cr_dataset();
    put(d, core::tags::sop_class_uid, core::vr_type::UI, "1.2.3.4");
    const auto unknown = write_file("unknown.dcm", d);
    const auto r = run({"validate", unknown, "--repo", repo()});
    EXPECT_EQ(r.code, cli::exit_operational);
    EXPECT_NE(r.err.find("UnknownSopClass"), std::string::npos) << r.err;
    const auto file = write_file("cr.dcm", testkit::make_cr_dataset());
    const auto bad_key = run({"validate", file, "--repo", repo(), "--answers", "noSuchId=true"});
    EXPECT_EQ(bad_key.code, cli::exit_operational);
    EXPECT_NE(bad_key.err.find("BadAnswerKey"), std::string::npos) << bad_key.err;
    EXPECT_EQ(run({"validate", file, "--repo", repo(), "--answers", "broken"}).code, cli::exit_operational);
    EXPECT_EQ(run({"validate", file, "--repo", path("no-repo")}).code, cli::exit_operational);
    EXPECT_EQ(run({"validate", file, "--defaults", "--answers", "a=true"}).code, cli::exit_operational);
}

TEST_F(CliTest, InteractivePrompts) {
    const auto file = write_file("cr.dcm", testkit::make_cr_dataset());
    const auto r = run({"validate", file, "--repo", repo(), "--interactive", "--format", "json"}, "n\n\ny\n");
    EXPECT_NE(r.err.find("Was contrast media used in this Image [Y/n]: "), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("Is patient an animal? [y/N]: "), std::string::npos);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["modules"][5]["category"], "UNSATISFIED_CONDITION");
    EXPECT_EQ(j["answersUsed"]["PatientIsAnAnimal"], false);
    EXPECT_EQ(j["answersUsed"]["ResponsiblePersonIsPresent"], true);
}

TEST_F(CliTest, ScriptedRunsDoNotPrompt) {
    const auto file = write_file("cr.dcm", testkit::make_cr_dataset());
    EXPECT_TRUE(run({"validate", file, "--repo", repo(), "--defaults"}).err.empty());
    EXPECT_TRUE(run({"validate", file, "--repo", repo(), "--answers", "PatientIsAnAnimal=false"}).err.empty());
}

TEST_F(CliTest, PromptAndAnswerHelpers) {
    EXPECT_EQ(cli::prompt_text("Was contrast media used in this Image", true),
              "Was contrast media used in this Image [Y/n]: ");
    EXPECT_EQ(cli::prompt_text("Is patient an animal?", false), "Is patient an animal? [y/N]: ");
    const auto a = cli::parse_answer_list("a=true,b=no, c = 1");
    ASSERT_TRUE(a);
    EXPECT_EQ(*a, (validation::answers{{"a", true}, {"b", false}, {"c", true}}));
    EXPECT_FALSE(cli::parse_answer_list("a"));
    EXPECT_FALSE(cli::parse_answer_list("a=maybe"));
}

TEST_F(CliTest, DeidentStripsPixelsAndReportsDelta) {
    auto d = testkit::make_cr_dataset();
    const auto pixels = testkit::make_pixel_data(1 << 20);
    d.set(pixels);
    const auto in = write_file("in.dcm", d);
    const auto out = path("out.dcm");
    const auto r = run({"deident", in, out});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    const auto in_size = fs::file_size(in);
    const auto out_size = fs::file_size(out);
    const auto pixel_size = core::encoded_size(pixels, core::explicit_little);
    EXPECT_EQ(in_size - out_size, pixel_size);
    EXPECT_NE(r.out.find("delta -" + std::to_string(pixel_size)), std::string::npos) << r.out;

    const auto parsed = core::parse_file(core::read_bytes(out));
    EXPECT_FALSE(parsed.data.contains(core::tags::pixel_data));
    EXPECT_EQ(core::get_string(parsed.data, core::tags::patient_name), "REMOVEDR");
    EXPECT_EQ(core::get_string(parsed.data, core::tags::number_of_frames), "1");
}

TEST_F(CliTest, DeidentKeepPixelsPreservesSize) {
    auto d = testkit::make_cr_dataset();
    d.set(testkit::make_pixel_data(1 << 20));
    const auto in = write_file("in.dcm", d);
    const auto out = path("out.dcm");
    ASSERT_EQ(run({"deident", in, out, "--keep-pixels"}).code, cli::exit_ok);
    EXPECT_EQ(fs::file_size(in), fs::file_size(out));
}

TEST_F(CliTest, DeidentTwiceIsIdempotent) {
    auto d = testkit::make_cr_dataset();
    d.set(testkit::make_pixel_data(1024));
    const auto in = write_file("in.dcm", d);
    ASSERT_EQ(run({"deident", in, path("once.dcm")}).code, cli::exit_ok);
    ASSERT_EQ(run({"deident", path("once.dcm"), path("twice.dcm")}).code, cli::exit_ok);
    EXPECT_EQ(core::read_bytes(path("once.dcm")), core::read_bytes(path("twice.dcm")));
}

TEST_F(CliTest, DeidentSeedIsDeterministicAndProfileApplies) {
    const auto in = write_file("in.dcm", testkit::make_cr_dataset());
    ASSERT_EQ(run({"deident", in, path("a.dcm"), "--seed", "9"}).code, cli::exit_ok);
    ASSERT_EQ(run({"deident", in, path("b.dcm"), "--seed", "9"}).code, cli::exit_ok);
    EXPECT_EQ(core::read_bytes(path("a.dcm")), core::read_bytes(path("b.dcm")));

    const auto profile = write_text("profile.txt", "00100010\tZeroDigits\n");
    ASSERT_EQ(run({"deident", in, path("c.dcm"), "--profile", profile}).code, cli::exit_ok);
    const auto parsed = core::parse_file(core::read_bytes(path("c.dcm")));
    EXPECT_EQ(core::get_string(parsed.data, core::tags::patient_name), "00000000");
    EXPECT_EQ(core::get_string(parsed.data, core::tags::patient_id), "PID12345");
}

TEST_F(CliTest, DeidentErrors) {
    EXPECT_EQ(run({"deident", path("missing.dcm"), path("out.dcm")}).code, cli::exit_operational);
    const auto in = write_file("in.dcm", testkit::make_cr_dataset());
    EXPECT_EQ(run({"deident", in, path("no/such/dir/out.dcm")}).code, cli::exit_operational);
    const auto bad_profile = write_text("bad.txt", "7FE00010\tTextFill\n");
    EXPECT_EQ(run({"deident", in, path("out.dcm"), "--profile", bad_profile}).code, cli::exit_operational);
}

TEST_F(CliTest, LintExitCodes) {
    const auto good = write_text("CR.xml", testkit::reference_cr_iod_xml());
    const auto r = run({"lint", good});
    EXPECT_EQ(r.code, cli::exit_ok);
    EXPECT_TRUE(r.out.empty()) << r.out;

    const auto bad = write_text("bad.xml", testkit::replace_once(testkit::reference_cr_iod_xml(),
                                                                 "contrasMediaWasUsed\" />", "noSuchId\" />"));
    const auto b = run({"lint", bad, "--kind", "iod"});
    EXPECT_EQ(b.code, cli::exit_findings);
    EXPECT_EQ(b.out.rfind("ERROR\t15\t", 0), 0u) << b.out;
    EXPECT_NE(b.out.find("noSuchId"), std::string::npos);
    EXPECT_EQ(std::count(b.out.begin(), b.out.end(), '\n'), 1);

    const auto empty = write_text("empty.xml", "");
    const auto e = run({"lint", empty});
    EXPECT_EQ(e.code, cli::exit_findings);
    EXPECT_EQ(std::count(e.out.begin(), e.out.end(), '\n'), 1);

    EXPECT_EQ(run({"lint", path("missing.xml")}).code, cli::exit_operational);
}

TEST_F(CliTest, LintWithRepositoryContext) {
    const auto module = write_text("Other.xml",
                                   "<Module>\n<DataElement keyword=\"ContrastBolusAgent\" tag=\"00180010\" vr=\"LO\" "
                                   "type=\"2\" vm=\"1\">\n<If idref=\"PatientIsAnAnimal\"/>\n</DataElement>\n</Module>");
    EXPECT_EQ(run({"lint", module}).code, cli::exit_ok);
    EXPECT_EQ(run({"lint", module, "--repo", repo()}).code, cli::exit_findings);
}

TEST_F(CliTest, ServeWithMissingRepository) {
    const auto r = run({"serve", "--repo", path("no-repo"), "--port", "0"});
    EXPECT_EQ(r.code, cli::exit_operational);
    EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::exit_operational);
    EXPECT_EQ(run({"frobnicate"}).code, cli::exit_operational);
    EXPECT_EQ(run({"validate"}).code, cli::exit_operational);
    EXPECT_EQ(run({"--help"}).code, cli::exit_ok);
}
