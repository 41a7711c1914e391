#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"

using namespace ksol;
using namespace ksol::testing;

TEST_CASE("all builtin entries validate and carry their stated degree") {
    const auto& cat = load_builtin();
    REQUIRE(cat.size() == 36);
    for (const auto& e : cat) {
        CHECK(validate(e.dp).all_passed());
        REQUIRE(e.expected.degree.has_value());
        CHECK(degree(e.dp) == *e.expected.degree);
    }
    CHECK(find_entry(cat, "dp/13") != nullptr);
    CHECK(find_entry(cat, "3fold/2.30") != nullptr);
    CHECK(find_entry(cat, "3fold/3.23") != nullptr);
    CHECK(find_entry(cat, "dp/0") == nullptr);

    // row 2 data as stated
    const auto* e2 = find_entry(cat, "dp/2");
    CHECK(e2->expected.singularity == "E8");
    CHECK(*e2->expected.degree == 1);
    CHECK(e2->dp.box.vertices()[0][0] == -1);
    CHECK(e2->dp.box.vertices()[1][0] == 5);
}

TEST_CASE("export/load round trip is exact and byte-stable") {
    const auto& cat = load_builtin();
    const auto dir = std::filesystem::temp_directory_path() / "ksol_test_export";
    std::filesystem::create_directories(dir);
    for (const auto& e : cat) {
        std::string name = e.id;
        for (auto& c : name)
            if (c == '/') c = '_';
        const auto path = (dir / (name + ".ksol")).string();
        export_entry(e, path);
        const auto back = load_file(path);
        CHECK(back.id == e.id);
        CHECK(back.dp == e.dp);
        CHECK(back.expected == e.expected);
        // byte stability
        CHECK(serialize_entry(back) == serialize_entry(e));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("float literals are rejected in geometry fields") {
    const std::string doc = R"(ksol-variety v1
id: bad/1
dimension: 1
box: (-1) (0.5)
phi.0: piece v=(1) mu=2
)";
    CHECK_THROWS_AS(parse_entry(doc), ParseError);
    try {
        parse_entry(doc);
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(e.column > 0);
    }
}

TEST_CASE("meta.xi accepts decimals") {
    const std::string doc = R"(ksol-variety v1
dimension: 1
box: (-1) (1)
phi.0: piece v=(1) mu=2
phi.inf: piece v=(-1) mu=2
meta.xi: (-0.5,0.25)
)";
    const auto e = parse_entry(doc);
    REQUIRE(e.expected.xi_reference.has_value());
    CHECK((*e.expected.xi_reference)[0] == -0.5);
}

TEST_CASE("validation failures carry the condition index") {
    // condition (iii): deg Phi < -2 somewhere inside
    const std::string doc = R"(ksol-variety v1
dimension: 1
box: (-1) (1)
phi.0: piece v=(-2) mu=1
phi.inf: piece v=(-1) mu=1
phi.1: piece v=(1) mu=2
)";
    CHECK_THROWS_AS(parse_entry(doc), ValidationError);
    try {
        parse_entry(doc);
    } catch (const ValidationError& e) {
        CHECK(e.condition == 3);
    }
    // condition (iv) via an affine form that is not of template shape
    const std::string doc4 = R"(ksol-variety v1
dimension: 1
box: (-1) (3)
phi.0: piece v=(-1) mu=1; piece v=(0) mu=1
phi.inf: piece v=(1) mu=4
phi.1: affine a=-1/3 b=(1/3)
)";
    try {
        parse_entry(doc4);
        CHECK(false);
    } catch (const ValidationError& e) {
        // the (u-1)/3 piece violates (ii) as well; the first failing
        // condition in order is reported
        CHECK(e.condition >= 2);
    }
    // stated degree mismatch
    const std::string doc0 = R"(ksol-variety v1
dimension: 1
box: (-1) (1)
phi.0: piece v=(1) mu=2
phi.inf: piece v=(-1) mu=2
meta.degree: 7
)";
    try {
        parse_entry(doc0);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.condition == 0);
    }
}

TEST_CASE("affine and piece forms normalise identically") {
    const std::string a = R"(ksol-variety v1
dimension: 1
box: (-1) (3)
phi.0: piece v=(-1) mu=1; piece v=(0) mu=1
phi.inf: piece v=(1) mu=4
phi.1: piece v=(1) mu=2
)";
    const std::string b = R"(ksol-variety v1
dimension: 1
box: (-1) (3)
phi.0: affine a=0 b=(-1); affine a=0 b=(0)
phi.inf: affine a=-3/4 b=(1/4)
phi.1: affine a=-1/2 b=(1/2)
)";
    CHECK(parse_entry(a).dp == parse_entry(b).dp);
    // and equals the builtin cubic
    CHECK(parse_entry(a).dp == dp_of("dp/13"));
}

TEST_CASE("the exported data files in the repository match the builtins") {
    // data/ is generated by `ksol export-data`; keep it diffable
    const auto root = std::filesystem::path(KSOL_SOURCE_DIR) / "data";
    if (!std::filesystem::exists(root)) return;  // pre-generation build
    for (const auto& e : load_builtin()) {
        std::string name = e.id;
        for (auto& c : name)
            if (c == '/') c = '_';
        const auto path = root / (name + ".ksol");
        REQUIRE(std::filesystem::exists(path));
        std::ifstream in(path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == serialize_entry(e));
    }
}
