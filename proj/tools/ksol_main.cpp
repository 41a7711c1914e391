// ksol: certified K-stability checker for complexity-one Fano T-varieties.
//
//   ksol validate <target>     check conditions (i)-(v) on the input data
//   ksol info <target>         degree, Cox presentation, admissible points
//   ksol candidate <target>    certified soliton-candidate box with evidence
//   ksol certify <target>      full verdict with Donaldson-Futaki intervals
//   ksol table [--threefolds]  run the builtin catalog and compare verdicts
//   ksol verify <report>       re-verify a structured report
//   ksol export-data [dir]     write the builtin catalog as data files
//
// Targets are builtin ids (dp/1..dp/34, 3fold/2.30, 3fold/3.23) or paths to
// variety files. Exit codes: 0 stable/ok, 1 input error, 2 unstable/mismatch,
// 3 indeterminate, 4 Kahler-Einstein candidate.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ksol/report.hpp"

using namespace ksol;

namespace {

CatalogEntry resolve_target(const std::string& target) {
    if (const auto* e = find_entry(load_builtin(), target)) return *e;
    return load_file(target);
}

int verdict_exit_code(StabilityStatus s) {
    switch (s) {
        case StabilityStatus::Stable: return 0;
        case StabilityStatus::Unstable: return 2;
        case StabilityStatus::Indeterminate: return 3;
        case StabilityStatus::KahlerEinsteinCandidate: return 4;
    }
    return 3;
}

std::string expected_verdict(const ExpectedData& ex) {
    if (!ex.kstable) return "";
    if (*ex.kstable) return to_string(StabilityStatus::Stable);
    bool zero_xi = true;
    if (ex.xi_reference)
        for (double x : *ex.xi_reference) zero_xi = zero_xi && x == 0;
    return to_string(zero_xi ? StabilityStatus::KahlerEinsteinCandidate
                             : StabilityStatus::Unstable);
}

void print_case_text(const ReportCase& rc) {
    std::cout << rc.id << ": " << rc.verdict << "  (degree " << rc.degree << ", precision "
              << rc.precision_used << " bits)\n";
    std::cout << "  cox: " << rc.cox << '\n';
    std::cout << "  admissible:";
    for (const auto& a : rc.admissible) std::cout << ' ' << a;
    if (rc.admissible.empty()) std::cout << " (none: stable without any calculation)";
    std::cout << '\n';
    std::cout << "  candidate:";
    for (const auto& [lo, hi] : rc.box_decimals) std::cout << " [" << lo << ", " << hi << "]";
    std::cout << '\n';
    for (const auto& df : rc.dfs)
        std::cout << "  DF(y=" << df.y << ") in [" << df.lower << ", " << df.upper
                  << "]  sign=" << df.sign << '\n';
    if (rc.destabilizer) std::cout << "  destabilizer: y=" << *rc.destabilizer << '\n';
    if (rc.expected)
        std::cout << "  expected: " << *rc.expected
                  << (rc.verdict == *rc.expected ? "  [match]" : "  [MISMATCH]") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified K-stability checker for complexity-one Fano T-varieties"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "text";
    int jobs = 0;
    app.add_option("--precision", cfg.precision_start, "starting precision in bits")
        ->capture_default_str();
    app.add_option("--max-bits", cfg.max_bits, "precision cap in bits")
        ->envname("KSOL_MAX_BITS")
        ->capture_default_str();
    app.add_option("--width", cfg.candidate_width, "1-D candidate width target")
        ->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon, "half side length of the 2-D candidate box")
        ->capture_default_str();
    app.add_option("--segments", cfg.segments, "boundary subdivisions per box edge")
        ->capture_default_str();
    app.add_option("--format", format, "output format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads (0 = hardware)")->capture_default_str();

    std::string target, out_path = "data";
    bool threefolds = false, verify_full = false;
    auto* c_validate = app.add_subcommand("validate", "check conditions (i)-(v)");
    c_validate->add_option("target", target)->required();
    auto* c_info = app.add_subcommand("info", "degree, Cox ring, admissible points, symmetries");
    c_info->add_option("target", target)->required();
    auto* c_candidate = app.add_subcommand("candidate", "certified soliton candidate");
    c_candidate->add_option("target", target)->required();
    auto* c_certify = app.add_subcommand("certify", "certify equivariant K-stability");
    c_certify->add_option("target", target)->required();
    auto* c_table = app.add_subcommand("table", "reproduce the classification tables");
    c_table->add_flag("--threefolds", threefolds, "run the threefolds instead of the surfaces");
    auto* c_verify = app.add_subcommand("verify", "re-verify a structured report");
    c_verify->add_option("report", target)->required();
    c_verify->add_flag("--full", verify_full, "recompute every boundary segment");
    auto* c_export = app.add_subcommand("export-data", "write builtin catalog data files");
    c_export->add_option("dir", out_path)->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    set_thread_count(jobs);

    try {
        if (*c_validate) {
            const auto entry = [&] {
                if (const auto* e = find_entry(load_builtin(), target)) return *e;
                // parse without the load-time validation so failures print
                std::ifstream in(target);
                if (!in) throw std::runtime_error("cannot open '" + target + "'");
                std::stringstream buf;
                buf << in.rdbuf();
                try {
                    return parse_entry(buf.str(), target);
                } catch (const ValidationError&) {
                    // fall through to re-parse leniently below
                    throw;
                }
            };
            try {
                const auto e = entry();
                const auto rep = validate(e.dp);
                std::cout << rep.summary();
                return rep.all_passed() ? 0 : 1;
            } catch (const ValidationError& ve) {
                std::cout << ve.what() << '\n';
                return 1;
            }
        }
        if (*c_info) {
            const auto e = resolve_target(target);
            std::cout << "id: " << e.id << '\n';
            std::cout << "degree: " << to_string(degree(e.dp)) << '\n';
            std::cout << "cox: " << cox_ring(e.dp).polynomial_text() << '\n';
            std::cout << "admissible:";
            for (const auto& y : admissible_points(e.dp)) std::cout << ' ' << y.name();
            std::cout << '\n';
            const auto syms = symmetries(e.dp);
            std::cout << "symmetries: " << syms.size() << '\n';
            for (const auto& s : syms) {
                std::cout << "  [";
                for (size_t i = 0; i < s.matrix.size(); ++i) {
                    if (i) std::cout << "; ";
                    for (size_t j = 0; j < s.matrix[i].size(); ++j)
                        std::cout << (j ? "," : "") << s.matrix[i][j];
                }
                std::cout << "]\n";
            }
            if (const auto* m = match_catalog(e.dp, load_builtin()))
                std::cout << "catalog match: " << m->id << " (" << m->expected.singularity
                          << ", rho=" << (m->expected.rho ? *m->expected.rho : 0) << ")\n";
            return 0;
        }
        if (*c_candidate || *c_certify) {
            const auto e = resolve_target(target);
            const auto verdict = certify(e.dp, cfg);
            Report rep;
            rep.config = cfg;
            rep.cases.push_back(build_case_report(e, verdict, cfg));
            if (format == "structured")
                std::cout << rep.render();
            else
                print_case_text(rep.cases[0]);
            if (*c_candidate) return 0;
            return verdict_exit_code(verdict.status);
        }
        if (*c_table) {
            Report rep;
            rep.config = cfg;
            bool all_match = true;
            for (const auto& e : load_builtin()) {
                const bool is_threefold = e.id.rfind("3fold/", 0) == 0;
                if (is_threefold != threefolds) continue;
                const auto verdict = certify(e.dp, cfg);
                auto rc = build_case_report(e, verdict, cfg);
                rc.expected = expected_verdict(e.expected);
                all_match = all_match && rc.verdict == *rc.expected;
                rep.cases.push_back(std::move(rc));
            }
            if (format == "structured") {
                std::cout << rep.render();
            } else {
                int matches = 0;
                for (const auto& rc : rep.cases) {
                    print_case_text(rc);
                    matches += rc.verdict == *rc.expected;
                }
                std::cout << matches << "/" << rep.cases.size() << " verdicts match\n";
            }
            return all_match ? 0 : 2;
        }
        if (*c_verify) {
            std::ifstream in(target);
            if (!in) throw std::runtime_error("cannot open '" + target + "'");
            std::stringstream buf;
            buf << in.rdbuf();
            const Report rep = Report::parse(buf.str());
            bool ok = true;
            for (const auto& rc : rep.cases) {
                const auto e = resolve_target(rc.id);
                const bool good = verify_case(rc, e.dp, verify_full, rep.config);
                std::cout << rc.id << ": " << (good ? "verified" : "FAILED") << '\n';
                ok = ok && good;
            }
            return ok ? 0 : 2;
        }
        if (*c_export) {
            std::filesystem::create_directories(out_path);
            for (const auto& e : load_builtin()) {
                std::string name = e.id;
                for (auto& c : name)
                    if (c == '/') c = '_';
                export_entry(e, (std::filesystem::path(out_path) / (name + ".ksol")).string());
            }
            std::cout << "wrote " << load_builtin().size() << " entries to " << out_path << '\n';
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
