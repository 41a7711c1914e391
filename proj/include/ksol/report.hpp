// Structured certification reports: a self-describing text document carrying
// the run configuration and, per case, the verdict, candidate evidence with
// exact parameters, and every Donaldson-Futaki interval with outward-rounded
// decimal endpoints. Rendering is byte-deterministic for fixed input and
// configuration; parse() recovers everything needed to re-verify the evidence.
#ifndef KSOL_REPORT_HPP
#define KSOL_REPORT_HPP

#include "ksol/catalog.hpp"
#include "ksol/stability.hpp"

namespace ksol {

struct ReportCase {
    std::string id;
    std::string verdict;
    int precision_used = 53;
    std::string degree;
    std::string cox;
    std::vector<std::string> admissible;
    int symmetry_count = 1;
    std::vector<std::pair<std::string, std::string>> box_decimals;  // (lower, upper)
    CandidateEvidence evidence;
    struct Df {
        std::string y;
        std::string lower, upper;  // decimal, outward rounded
        std::string sign;
    };
    std::vector<Df> dfs;
    std::optional<std::string> destabilizer;  // y name
    std::optional<std::string> expected;      // table mode: expected verdict
};

struct Report {
    RunConfig config;
    std::vector<ReportCase> cases;

    std::string render() const;
    static Report parse(const std::string& text);
};

ReportCase build_case_report(const CatalogEntry& entry, const StabilityVerdict& verdict,
                             const RunConfig& cfg);

// Reconstructs the candidate from the reported evidence and re-verifies it
// against dp, then recomputes every reported DF sign at the reported
// precision. BoxGradient evidence is spot-checked unless full is set.
bool verify_case(const ReportCase& rc, const DivisorialPolytope& dp, bool full,
                 const RunConfig& cfg);

}  // namespace ksol

#endif
