#include "doctest.h"
#include "helpers.hpp"
#include "ksol/report.hpp"
#include "ksol/stability.hpp"

using namespace ksol;
using namespace ksol::testing;

// The OpenMP kernels must produce bit-identical results to the serial
// reference path.

TEST_CASE("boundary sweep: serial and parallel evidence agree exactly") {
    const auto& dp = dp_of("3fold/2.30");
    RunConfig serial;
    serial.exec = Exec::Serial;
    RunConfig parallel;
    parallel.exec = Exec::Parallel;
    auto a = candidate_box(dp, {0.0, 0.51489}, 1e-4, 96, serial);
    auto b = candidate_box(dp, {0.0, 0.51489}, 1e-4, 96, parallel);
    const auto& ea = std::get<EvidenceBoxGradient>(a.evidence);
    const auto& eb = std::get<EvidenceBoxGradient>(b.evidence);
    CHECK(ea.min_gradient_lower == eb.min_gradient_lower);
    CHECK(ea.edge_minima == eb.edge_minima);
    CHECK(ea.min_edge == eb.min_edge);
    CHECK(ea.min_segment == eb.min_segment);
}

TEST_CASE("certify under both policies renders identical reports") {
    RunConfig serial;
    serial.exec = Exec::Serial;
    RunConfig parallel;
    parallel.exec = Exec::Parallel;
    for (const char* id : {"dp/13", "dp/30"}) {
        const auto* e = find_entry(load_builtin(), id);
        Report ra, rb;
        ra.config = serial;
        rb.config = serial;  // identical header; only execution differs
        ra.cases.push_back(build_case_report(*e, certify(e->dp, serial), serial));
        rb.cases.push_back(build_case_report(*e, certify(e->dp, parallel), parallel));
        CHECK(ra.render() == rb.render());
    }
}
