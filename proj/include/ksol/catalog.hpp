// The shipped datasets (34 Gorenstein del Pezzo surfaces with C*-action and
// the two fully specified Fano threefolds) plus ingestion and export of
// user-supplied varieties in the text data format.
//
// Format (one document per variety, '#' starts a comment):
//
//   ksol-variety v1
//   id: dp/13
//   dimension: 1
//   box: (-1) (3)
//   phi.0: piece v=(-1) mu=1; piece v=(0) mu=1
//   phi.inf: piece v=(1) mu=4
//   phi.1: affine a=-1/2 b=(1/2)
//   meta.degree: 3
//   meta.singularity: A5A1
//   meta.rho: 1
//   meta.kstable: false
//   meta.xi: (-1.24607)
//
// Geometry fields take exact rationals only ("p/q"); floating point literals
// are rejected. meta.xi holds the reference decimals as printed.
#ifndef KSOL_CATALOG_HPP
#define KSOL_CATALOG_HPP

#include <optional>

#include "ksol/classify.hpp"
#include "ksol/divisorial.hpp"

namespace ksol {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& what, int l, int c)
        : std::runtime_error(what + " (line " + std::to_string(l) + ", column " +
                             std::to_string(c) + ")"),
          line(l),
          column(c) {}
};

struct ValidationError : std::runtime_error {
    int condition;  // 0 = structural, 1..5 = (i)..(v)
    ValidationError(const std::string& what, int cond)
        : std::runtime_error(what), condition(cond) {}
};

struct ExpectedData {
    std::optional<Rational> degree;
    std::string singularity;
    std::optional<int> rho;
    std::optional<bool> kstable;                  // null = unknown
    std::optional<std::vector<double>> xi_reference;
    bool toric = false;
    std::string note;

    bool operator==(const ExpectedData&) const = default;
};

struct CatalogEntry {
    std::string id;
    DivisorialPolytope dp;
    ExpectedData expected;

    bool operator==(const CatalogEntry&) const = default;
};

// The 34 Table-1 surfaces (ids dp/1..dp/34) and threefolds 3fold/2.30,
// 3fold/3.23. Every entry validates and has its stated degree.
const std::vector<CatalogEntry>& load_builtin();

// Parses and validates one document; throws ParseError / ValidationError.
CatalogEntry parse_entry(const std::string& text, const std::string& source_name = "<string>");
CatalogEntry load_file(const std::string& path);

// Canonical serialization; export_entry(load_file(p)) is byte-stable.
std::string serialize_entry(const CatalogEntry& e);
void export_entry(const CatalogEntry& e, const std::string& path);

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& cat, const std::string& id);

}  // namespace ksol

#endif
