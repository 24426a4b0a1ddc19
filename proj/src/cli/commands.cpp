/**
 * @file commands.cpp
 * @brief Command implementations
 */

#include "dcmval/cli/commands.hpp"

#include "dcmval/core/part10.hpp"
#include "dcmval/deident/deidentifier.hpp"
#include "dcmval/description/lint.hpp"
#include "dcmval/description/registry.hpp"
#include "dcmval/service/http_server.hpp"
#include "dcmval/validation/engine.hpp"
#include "dcmval/validation/report_format.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace dcmval::cli {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

std::optional<bool> parse_bool(std::string_view text) {
    const auto v = lower(trim(text));
    if (v == "true" || v == "yes" || v == "y" || v == "1") {
        return true;
    }
    if (v == "false" || v == "no" || v == "n" || v == "0") {
        return false;
    }
    return std::nullopt;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        if (const auto t = trim(item); !t.empty()) {
            out.emplace_back(t);
        }
    }
    return out;
}

struct validate_options {
    std::string file;
    std::string repo;
    std::string modules{"all"};
    bool defaults{false};
    std::string answers;
    bool interactive{false};
    bool no_deident{false};
    std::string format{"text"};
    std::string severity{"all"};
};

struct deident_options {
    std::string input;
    std::string output;
    bool keep_pixels{false};
    std::string profile;
    std::optional<std::uint64_t> seed;
};

struct lint_options {
    std::string file;
    std::string kind{"auto"};
    std::string repo;
};

struct serve_options {
    std::string host{"0.0.0.0"};
    int port{8080};
    std::string repo;
    long long session_ttl{30 * 60};
    std::size_t max_upload{64u * 1024u * 1024u};
    bool server_deident{false};
};

class operational_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

description::registry load_repo(const std::string& dir) {
    try {
        return description::load_repository(dir);
    } catch (const description::repository_error& e) {
        throw operational_error(std::string("RepositoryError: ") + e.what());
    }
}

validation::answers ask(const std::vector<description::precondition>& questions, std::istream& in,
                        std::ostream& out) {
    validation::answers given;
    for (const auto& q : questions) {
        while (true) {
            out << prompt_text(q.question, q.default_value) << std::flush;
            std::string line;
            if (!std::getline(in, line)) {
                out << '\n';
                given[q.id] = q.default_value;
                break;
            }
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
                line.pop_back();
            }
            if (line.empty()) {
                given[q.id] = q.default_value;
                break;
            }
            if (auto v = parse_bool(line)) {
                given[q.id] = *v;
                break;
            }
            out << "Please answer y or n.\n";
        }
    }
    return given;
}

int cmd_validate(const validate_options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
    core::dicom_file file;
    try {
        file = core::parse_file(core::read_bytes(opt.file));
    } catch (const core::parse_error& e) {
        throw operational_error(std::string("ParseFailure: ") + e.what());
    } catch (const std::ios_base::failure& e) {
        throw operational_error("cannot read " + opt.file + ": " + e.what());
    }
    if (!opt.no_deident) {
        deident::uid_map uids(deident::random_seed());
        file = deident::deidentify_file(file, deident::default_profile(), uids, true);
    }

    const auto reg = load_repo(opt.repo);
    std::optional<std::string> uid;
    try {
        uid = core::get_string(file.data, core::tags::sop_class_uid);
    } catch (const core::not_text_vr& e) {
        throw operational_error(std::string("ParseFailure: ") + e.what());
    }
    const auto* iod = uid ? description::resolve_iod(reg, *uid) : nullptr;
    if (iod == nullptr) {
        throw operational_error("UnknownSopClass: no IOD description is mapped to SOP Class '" +
                                uid.value_or("") + "'");
    }

    auto sel = validation::selection::all_modules();
    if (lower(opt.modules) != "all") {
        const auto names = split_list(opt.modules);
        sel = validation::selection::of({names.begin(), names.end()});
        if (auto unknown = validation::unknown_modules(*iod, sel); !unknown.empty()) {
            throw operational_error("UnknownModuleName: IOD " + iod->name + " has no module '" +
                                    unknown.front() + "'");
        }
    }

    const auto questions = validation::collect_questions(*iod, reg, sel);
    validation::answers given;
    if (!opt.answers.empty()) {
        auto parsed = parse_answer_list(opt.answers);
        if (!parsed) {
            throw operational_error("BadAnswerKey: cannot parse --answers '" + opt.answers +
                                    "' (expected id=true|false,...)");
        }
        for (const auto& [id, value] : *parsed) {
            const bool known = std::any_of(questions.begin(), questions.end(),
                                           [&](const auto& q) { return q.id == id; });
            if (!known) {
                throw operational_error("BadAnswerKey: no precondition '" + id +
                                        "' applies to the selected modules");
            }
        }
        given = std::move(*parsed);
    } else if (opt.interactive) {
        given = ask(questions, in, err);
    }

    const auto report = validation::validate(file.data, *iod, reg, sel, given);

    validation::output_filter filter;
    if (opt.severity == "error") {
        filter.severities = {validation::severity::error};
    } else if (opt.severity == "warning") {
        filter.severities = {validation::severity::warning};
    }
    out << (opt.format == "json" ? validation::render_json(report, filter)
                                 : validation::render_text(report, filter));

    if (opt.severity == "warning") {
        for (const auto& m : report.modules) {
            for (const auto& f : m.findings) {
                if (f.level == validation::severity::warning) {
                    return exit_findings;
                }
            }
        }
        return exit_ok;
    }
    return report.summary().has_errors > 0 ? exit_findings : exit_ok;
}

int cmd_deident(const deident_options& opt, std::ostream& out, std::ostream& err) {
    std::vector<std::uint8_t> input;
    core::dicom_file file;
    try {
        input = core::read_bytes(opt.input);
        file = core::parse_file(input);
    } catch (const core::parse_error& e) {
        throw operational_error(std::string("ParseFailure: ") + e.what());
    } catch (const std::ios_base::failure& e) {
        throw operational_error("cannot read " + opt.input + ": " + e.what());
    }

    deident::deident_profile loaded;
    const deident::deident_profile* profile = &deident::default_profile();
    if (!opt.profile.empty()) {
        try {
            loaded = deident::load_profile(opt.profile);
        } catch (const deident::profile_error& e) {
            throw operational_error(std::string("ProfileError: ") + e.what());
        }
        profile = &loaded;
    }

    deident::uid_map uids(opt.seed.value_or(deident::random_seed()));
    std::vector<deident::deident_notice> notices;
    const auto result = deident::deidentify_file(file, *profile, uids, !opt.keep_pixels, &notices);
    for (const auto& n : notices) {
        err << "notice: " << n.tag.to_string() << ": " << n.message << '\n';
    }

    std::vector<std::uint8_t> output;
    try {
        output = core::serialize_file(result.meta, result.data);
        core::write_bytes(opt.output, output);
    } catch (const std::exception& e) {
        throw operational_error("cannot write " + opt.output + ": " + e.what());
    }
    const auto delta = static_cast<long long>(output.size()) - static_cast<long long>(input.size());
    out << opt.input << " (" << input.size() << " bytes) -> " << opt.output << " (" << output.size()
        << " bytes), delta " << delta << '\n';
    return exit_ok;
}

int cmd_lint(const lint_options& opt, std::ostream& out) {
    std::ifstream in(opt.file, std::ios::binary);
    if (!in) {
        throw operational_error("cannot read " + opt.file);
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    auto kind = description::description_kind::auto_detect;
    if (opt.kind == "iod") {
        kind = description::description_kind::iod;
    } else if (opt.kind == "module") {
        kind = description::description_kind::module;
    } else if (opt.kind == "table") {
        kind = description::description_kind::table;
    }

    std::optional<description::lint_context> ctx;
    if (!opt.repo.empty()) {
        ctx = description::make_lint_context(load_repo(opt.repo), fs::path(opt.file).stem().string());
    }
    const auto diags = description::lint(buf.str(), kind, ctx ? &*ctx : nullptr);
    out << description::format_lint_machine(diags);
    return description::has_errors(diags) ? exit_findings : exit_ok;
}

std::atomic<bool> stop_requested{false};

extern "C" void on_signal(int) {
    stop_requested = true;
}

int cmd_serve(const serve_options& opt, std::ostream& out, std::ostream& err) {
    if (!fs::is_directory(opt.repo)) {
        throw operational_error("repository directory '" + opt.repo + "' does not exist");
    }
    auto reg = std::make_shared<const description::registry>(load_repo(opt.repo));
    for (const auto& w : reg->warnings()) {
        err << "warning: " << w << '\n';
    }

    service::service_config config;
    config.session_ttl = std::chrono::seconds(opt.session_ttl);
    config.max_upload = opt.max_upload;
    config.server_deident = opt.server_deident;
    service::validation_service svc(reg, config);
    service::http_server server(svc, &out);
    if (!server.bind(opt.host, opt.port)) {
        throw operational_error("cannot listen on " + opt.host + ":" + std::to_string(opt.port));
    }
    err << "dcmval serving " << opt.repo << " on " << opt.host << ':' << server.port() << '\n'
        << std::flush;

    stop_requested = false;
    auto previous_int = std::signal(SIGINT, on_signal);
    auto previous_term = std::signal(SIGTERM, on_signal);
    std::thread watcher([&server] {
        while (!stop_requested) {
            std::this_thread::sleep_for(std::chrono::milliseconds(100));
        }
        server.stop();
    });
    server.listen();
    stop_requested = true;
    watcher.join();
    std::signal(SIGINT, previous_int);
    std::signal(SIGTERM, previous_term);
    return exit_ok;
}

}  // namespace

std::optional<validation::answers> parse_answer_list(std::string_view text) {
    validation::answers out;
    for (const auto& item : split_list(text)) {
        const auto eq = item.find('=');
        const auto key = trim(std::string_view(item).substr(0, eq));
        if (eq == std::string::npos || key.empty()) {
            return std::nullopt;
        }
        auto value = parse_bool(std::string_view(item).substr(eq + 1));
        if (!value) {
            return std::nullopt;
        }
        out[std::string(key)] = *value;
    }
    return out;
}

std::string prompt_text(std::string_view question, bool default_value) {
    return std::string(question) + (default_value ? " [Y/n]: " : " [y/N]: ");
}

std::string default_repository() {
    if (const char* env = std::getenv("DCMVAL_REPO"); env != nullptr && *env != '\0') {
        return env;
    }
    return "descriptions";
}

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"DICOM conformance validation toolkit", "dcmval"};
    app.require_subcommand(1);

    validate_options vopt;
    vopt.repo = default_repository();
    auto* validate = app.add_subcommand("validate", "Validate a DICOM file against its IOD description");
    validate->add_option("file", vopt.file, "DICOM Part-10 file")->required();
    validate->add_option("--repo", vopt.repo, "Description repository directory");
    validate->add_option("--modules", vopt.modules, "Comma-separated module names, or 'all'");
    auto* defaults = validate->add_flag("--defaults", vopt.defaults, "Use default precondition answers");
    auto* answers = validate->add_option("--answers", vopt.answers, "Answers as id=true|false,...");
    auto* interactive =
        validate->add_flag("--interactive", vopt.interactive, "Ask precondition questions on the terminal");
    defaults->excludes(answers)->excludes(interactive);
    answers->excludes(interactive);
    validate->add_flag("--no-deident", vopt.no_deident, "Validate without de-identifying first");
    validate->add_option("--format", vopt.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    validate->add_option("--severity", vopt.severity, "Findings to show")
        ->check(CLI::IsMember({"error", "warning", "all"}));

    deident_options dopt;
    auto* deident = app.add_subcommand("deident", "De-identify a file and strip its pixel data");
    deident->add_option("in", dopt.input, "Input file")->required();
    deident->add_option("out", dopt.output, "Output file")->required();
    deident->add_flag("--keep-pixels", dopt.keep_pixels, "Keep Pixel Data");
    deident->add_option("--profile", dopt.profile, "Profile file (TAG<TAB>STRATEGY per line)");
    deident->add_option("--seed", dopt.seed, "Seed for UID replacement");

    lint_options lopt;
    auto* lint = app.add_subcommand("lint", "Check a description file");
    lint->add_option("file", lopt.file, "Description file")->required();
    lint->add_option("--kind", lopt.kind, "Expected description kind")
        ->check(CLI::IsMember({"iod", "module", "table", "auto"}));
    lint->add_option("--repo", lopt.repo, "Repository used to resolve precondition ids");

    serve_options sopt;
    sopt.repo = default_repository();
    auto* serve = app.add_subcommand("serve", "Run the HTTP validation service");
    serve->add_option("--host", sopt.host, "Listen address");
    serve->add_option("--port", sopt.port, "Listen port")->check(CLI::Range(0, 65535));
    serve->add_option("--repo", sopt.repo, "Description repository directory");
    serve->add_option("--session-ttl", sopt.session_ttl, "Session lifetime in seconds")
        ->check(CLI::PositiveNumber);
    serve->add_option("--max-upload", sopt.max_upload, "Largest accepted upload in bytes")
        ->check(CLI::PositiveNumber);
    serve->add_flag("--server-deident", sopt.server_deident, "De-identify uploads on the server");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_operational;
    }

    try {
        if (*validate) {
            return cmd_validate(vopt, in, out, err);
        }
        if (*deident) {
            return cmd_deident(dopt, out, err);
        }
        if (*lint) {
            return cmd_lint(lopt, out);
        }
        return cmd_serve(sopt, out, err);
    } catch (const operational_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_operational;
}

}  // namespace dcmval::cli
