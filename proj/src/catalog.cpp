#include "ksol/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ksol {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line;
    int base_col;

    int col() const { return base_col + static_cast<int>(pos) + 1; }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", line, col());
        ++pos;
    }
    std::string token(const char* extra_delims = "") {
        skip_ws();
        const size_t start = pos;
        while (pos < s.size()) {
            const char c = s[pos];
            if (c == ' ' || c == '\t' || c == ',' || c == ')' || c == ';' || c == '(' ||
                std::string(extra_delims).find(c) != std::string::npos)
                break;
            ++pos;
        }
        if (pos == start) throw ParseError("expected a token", line, col());
        return s.substr(start, pos - start);
    }
};

Rational rational_token(Cursor& cur) {
    const int c = cur.col();
    const std::string tok = cur.token("=");
    try {
        return parse_rational(tok);
    } catch (const std::exception& e) {
        throw ParseError(e.what(), cur.line, c);
    }
}

QVector tuple_of_rationals(Cursor& cur) {
    cur.expect('(');
    QVector v;
    while (true) {
        v.push_back(rational_token(cur));
        if (cur.peek(',')) {
            cur.expect(',');
            continue;
        }
        break;
    }
    cur.expect(')');
    return v;
}

std::vector<double> tuple_of_doubles(Cursor& cur) {
    cur.expect('(');
    std::vector<double> v;
    while (true) {
        const int c = cur.col();
        const std::string tok = cur.token();
        char* end = nullptr;
        const double d = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size())
            throw ParseError("invalid decimal '" + tok + "'", cur.line, c);
        v.push_back(d);
        if (cur.peek(',')) {
            cur.expect(',');
            continue;
        }
        break;
    }
    cur.expect(')');
    return v;
}

AffinePiece parse_piece(Cursor& cur, int dim) {
    const int c0 = cur.col();
    const std::string kind = cur.token("=");
    if (kind == "piece") {
        // piece v=(..) mu=N
        cur.skip_ws();
        if (cur.token("=") != "v") throw ParseError("expected v=", cur.line, cur.col());
        cur.expect('=');
        const QVector v = tuple_of_rationals(cur);
        if (static_cast<int>(v.size()) != dim)
            throw ParseError("piece vector has wrong dimension", cur.line, c0);
        if (cur.token("=") != "mu") throw ParseError("expected mu=", cur.line, cur.col());
        cur.expect('=');
        const Rational mu = rational_token(cur);
        if (!is_integer(mu) || mu <= 0)
            throw ParseError("mu must be a positive integer", cur.line, c0);
        QVector vi;
        for (const auto& x : v) {
            if (!is_integer(x)) throw ParseError("piece vector must be integral", cur.line, c0);
            vi.push_back(x);
        }
        return AffinePiece::from_template(vi, mu.get_num().get_si());
    }
    if (kind == "affine") {
        // affine a=<rat> b=(..)
        if (cur.token("=") != "a") throw ParseError("expected a=", cur.line, cur.col());
        cur.expect('=');
        AffinePiece p;
        p.a = rational_token(cur);
        if (cur.token("=") != "b") throw ParseError("expected b=", cur.line, cur.col());
        cur.expect('=');
        p.b = tuple_of_rationals(cur);
        if (static_cast<int>(p.b.size()) != dim)
            throw ParseError("affine form has wrong dimension", cur.line, c0);
        return p;
    }
    throw ParseError("unknown piece kind '" + kind + "'", cur.line, c0);
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::string format_double(double d) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    (void)ec;
    return std::string(buf, end);
}

}  // namespace

CatalogEntry parse_entry(const std::string& text, const std::string& source_name) {
    CatalogEntry entry;
    std::optional<int> dimension;
    std::vector<QVector> box_vertices;
    std::vector<std::pair<MarkedPoint, PLFunction>> phi;
    bool saw_header = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = strip(raw);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "ksol-variety v1")
                throw ParseError("missing 'ksol-variety v1' header in " + source_name, line_no, 1);
            saw_header = true;
            continue;
        }
        const size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", line_no, 1);
        const std::string key = strip(line.substr(0, colon));
        const std::string value = strip(line.substr(colon + 1));
        const int base_col = static_cast<int>(raw.find(value.empty() ? ":" : value));
        Cursor cur{value, 0, line_no, base_col};

        if (key == "id") {
            entry.id = value;
        } else if (key == "dimension") {
            const Rational d = rational_token(cur);
            if (!is_integer(d) || d < 1 || d > 3)
                throw ParseError("dimension must be 1, 2 or 3", line_no, base_col + 1);
            dimension = static_cast<int>(d.get_num().get_si());
        } else if (key == "box") {
            if (!dimension) throw ParseError("dimension must precede box", line_no, 1);
            while (!cur.done()) {
                QVector v = tuple_of_rationals(cur);
                if (static_cast<int>(v.size()) != *dimension)
                    throw ParseError("box vertex has wrong dimension", line_no, cur.col());
                box_vertices.push_back(std::move(v));
            }
        } else if (key.rfind("phi.", 0) == 0) {
            if (!dimension) throw ParseError("dimension must precede phi", line_no, 1);
            const auto mp = MarkedPoint::from_name(key.substr(4));
            if (!mp) throw ParseError("bad marked point '" + key.substr(4) + "'", line_no, 1);
            PLFunction f;
            while (true) {
                f.pieces.push_back(parse_piece(cur, *dimension));
                if (cur.peek(';')) {
                    cur.expect(';');
                    continue;
                }
                break;
            }
            if (!cur.done()) throw ParseError("trailing input after pieces", line_no, cur.col());
            for (const auto& [p, g] : phi)
                if (p == *mp) throw ParseError("duplicate phi." + mp->name(), line_no, 1);
            phi.emplace_back(*mp, std::move(f));
        } else if (key == "meta.degree") {
            entry.expected.degree = rational_token(cur);
        } else if (key == "meta.singularity") {
            entry.expected.singularity = value;
        } else if (key == "meta.rho") {
            const Rational r = rational_token(cur);
            if (!is_integer(r)) throw ParseError("rho must be an integer", line_no, base_col + 1);
            entry.expected.rho = static_cast<int>(r.get_num().get_si());
        } else if (key == "meta.kstable") {
            if (value == "true") entry.expected.kstable = true;
            else if (value == "false") entry.expected.kstable = false;
            else if (value == "null") entry.expected.kstable = std::nullopt;
            else throw ParseError("meta.kstable must be true/false/null", line_no, base_col + 1);
        } else if (key == "meta.xi") {
            entry.expected.xi_reference = tuple_of_doubles(cur);
        } else if (key == "meta.toric") {
            if (value == "true") entry.expected.toric = true;
            else if (value == "false") entry.expected.toric = false;
            else throw ParseError("meta.toric must be true/false", line_no, base_col + 1);
        } else if (key == "meta.note") {
            entry.expected.note = value;
        } else {
            throw ParseError("unknown key '" + key + "'", line_no, 1);
        }
    }
    if (!saw_header) throw ParseError("empty document " + source_name, 1, 1);
    if (!dimension) throw ParseError("missing dimension", line_no, 1);
    if (box_vertices.empty()) throw ParseError("missing box", line_no, 1);
    if (phi.empty()) throw ParseError("missing phi functions", line_no, 1);

    entry.dp.box = Polytope::from_vertices(std::move(box_vertices));
    // canonical piece order inside each PL function
    for (auto& [p, f] : phi)
        std::sort(f.pieces.begin(), f.pieces.end(), [](const AffinePiece& x, const AffinePiece& y) {
            if (x.b != y.b) return lex_less(x.b, y.b);
            return x.a < y.a;
        });
    entry.dp.phi = std::move(phi);
    entry.dp.sort_phi();

    const auto rep = validate(entry.dp);
    if (!rep.all_passed()) {
        int cond = 0;
        if (rep.structural.passed)
            for (int i = 0; i < 5; ++i)
                if (!rep.conditions[i].passed) {
                    cond = i + 1;
                    break;
                }
        throw ValidationError("validation of " + source_name + " failed:\n" + rep.summary(), cond);
    }
    if (entry.expected.degree && degree(entry.dp) != *entry.expected.degree)
        throw ValidationError("stated degree " + to_string(*entry.expected.degree) +
                                  " does not match computed degree " +
                                  to_string(degree(entry.dp)) + " in " + source_name,
                              0);
    return entry;
}

CatalogEntry load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_entry(buf.str(), path);
}

std::string serialize_entry(const CatalogEntry& e) {
    std::ostringstream os;
    os << "ksol-variety v1\n";
    if (!e.id.empty()) os << "id: " << e.id << '\n';
    os << "dimension: " << e.dp.dim() << '\n';
    os << "box:";
    for (const auto& v : e.dp.box.vertices()) os << ' ' << to_string(v);
    os << '\n';
    for (const auto& [p, f] : e.dp.phi) {
        os << "phi." << p.name() << ": ";
        for (size_t i = 0; i < f.pieces.size(); ++i) {
            if (i) os << "; ";
            if (const auto tf = f.pieces[i].template_form()) {
                os << "piece v=(";
                for (size_t j = 0; j < tf->v.size(); ++j) {
                    if (j) os << ',';
                    os << tf->v[j];
                }
                os << ") mu=" << tf->mu;
            } else {
                os << "affine a=" << to_string(f.pieces[i].a) << " b=" << to_string(f.pieces[i].b);
            }
        }
        os << '\n';
    }
    if (e.expected.degree) os << "meta.degree: " << to_string(*e.expected.degree) << '\n';
    if (!e.expected.singularity.empty())
        os << "meta.singularity: " << e.expected.singularity << '\n';
    if (e.expected.rho) os << "meta.rho: " << *e.expected.rho << '\n';
    if (e.expected.kstable) os << "meta.kstable: " << (*e.expected.kstable ? "true" : "false") << '\n';
    if (e.expected.xi_reference) {
        os << "meta.xi: (";
        for (size_t i = 0; i < e.expected.xi_reference->size(); ++i) {
            if (i) os << ',';
            os << format_double((*e.expected.xi_reference)[i]);
        }
        os << ")\n";
    }
    if (e.expected.toric) os << "meta.toric: true\n";
    if (!e.expected.note.empty()) os << "meta.note: " << e.expected.note << '\n';
    return os.str();
}

void export_entry(const CatalogEntry& e, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << serialize_entry(e);
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& cat, const std::string& id) {
    for (const auto& e : cat)
        if (e.id == id) return &e;
    return nullptr;
}

// ---------------------------------------------------------------------------
// builtin data

namespace {

// 34 Gorenstein del Pezzo surfaces with C*-action followed by the two
// threefolds. Piece notation: v=(a) mu=m encodes u -> (<a,u> - m + 1)/m.
const char* const kBuiltinData = R"KSOL(
ksol-variety v1
id: dp/1
dimension: 1
box: (-1) (1)
phi.0: piece v=(-2) mu=1; piece v=(-1) mu=1
phi.inf: piece v=(1) mu=2
phi.1: piece v=(1) mu=2
phi.c: piece v=(1) mu=2
meta.degree: 1
meta.singularity: 2D4
meta.rho: 1
meta.kstable: true
meta.xi: (0)
---
ksol-variety v1
id: dp/2
dimension: 1
box: (-1) (5)
phi.0: piece v=(1) mu=5; piece v=(0) mu=1
phi.inf: piece v=(1) mu=3
phi.1: piece v=(-1) mu=2
meta.degree: 1
meta.singularity: E8
meta.rho: 1
meta.kstable: true
meta.xi: (-1.99761)
---
ksol-variety v1
id: dp/3
dimension: 1
box: (-1) (3)
phi.0: piece v=(1) mu=3; piece v=(0) mu=1
phi.inf: piece v=(1) mu=4
phi.1: piece v=(-1) mu=2
meta.degree: 1
meta.singularity: E7A1
meta.rho: 1
meta.kstable: true
meta.xi: (-1.94024)
---
ksol-variety v1
id: dp/4
dimension: 1
box: (-1) (2)
phi.0: piece v=(1) mu=2; piece v=(0) mu=1
phi.inf: piece v=(1) mu=3
phi.1: piece v=(-2) mu=3
meta.degree: 1
meta.singularity: E6A2
meta.rho: 1
meta.kstable: true
meta.xi: (-1.69131)
---
ksol-variety v1
id: dp/5
dimension: 1
box: (-1) (1)
phi.0: piece v=(-2) mu=1; piece v=(0) mu=1
phi.inf: piece v=(1) mu=2
phi.1: piece v=(1) mu=2
meta.degree: 2
meta.singularity: 2A3A1
meta.rho: 1
meta.kstable: true
meta.xi: (0)
---
ksol-variety v1
id: dp/6
dimension: 1
box: (-1) (2)
phi.0: piece v=(-1) mu=1; piece v=(0) mu=1
phi.inf: piece v=(1) mu=3
phi.1: piece v=(1) mu=3
meta.degree: 2
meta.singularity: A5A2
meta.rho: 1
meta.kstable: true
meta.xi: (-0.97052)
---
ksol-variety v1
id: dp/7
dimension: 1
box: (-1) (3)
phi.0: piece v=(1) mu=2; piece v=(0) mu=1
phi.inf: piece v=(1) mu=4
phi.1: piece v=(-1) mu=2
meta.degree: 2
meta.singularity: D6A1
meta.rho: 1
meta.kstable: true
meta.xi: (-1.79675)
---
ksol-variety v1
id: dp/8
dimension: 1
box: (-1) (5)
phi.0: piece v=(1) mu=4; piece v=(0) mu=1
phi.inf: piece v=(1) mu=3
phi.1: piece v=(-1) mu=2
meta.degree: 2
meta.singularity: E7
meta.rho: 1
meta.kstable: true
meta.xi: (-1.99186)
---
ksol-variety v1
id: dp/9
dimension: 1
box: (-1) (3)
phi.0: piece v=(1) mu=3; piece v=(0) mu=1
phi.inf: piece v=(1) mu=3; piece v=(0) mu=1
phi.1: piece v=(-1) mu=2
meta.degree: 2
meta.singularity: E6
meta.rho: 2
meta.kstable: true
meta.xi: (-1.94024)
---
ksol-variety v1
id: dp/10
dimension: 1
box: (-1) (1)
phi.0: piece v=(-1) mu=1; piece v=(0) mu=1
phi.inf: piece v=(-1) mu=1; piece v=(0) mu=1
phi.1: piece v=(1) mu=2
phi.c: piece v=(1) mu=2
meta.degree: 2
meta.singularity: 2A3
meta.rho: 2
meta.kstable: true
meta.xi: (0)
---
ksol-variety v1
id: dp/11
dimension: 1
box: (-1) (2)
phi.0: piece v=(1) mu=2; piece v=(0) mu=1
phi.inf: piece v=(1) mu=2; piece v=(0) mu=1
phi.1: piece v=(-2) mu=3
meta.degree: 2
meta.singularity: D5A1
meta.rho: 2
meta.kstable: true
meta.xi: (-1.69131)
---
ksol-variety v1
id: dp/12
dimension: 1
box: (-1) (1)
phi.0: piece v=(1) mu=2
phi.inf: piece v=(1) mu=2
phi.1: piece v=(-1) mu=2
meta.degree: 2
meta.singularity: D43A1
meta.rho: 1
meta.kstable: true
meta.xi: (-1.34399)
---
ksol-variety v1
id: dp/13
dimension: 1
box: (-1) (3)
phi.0: piece v=(-1) mu=1; piece v=(0) mu=1
phi.inf: piece v=(1) mu=4
phi.1: piece v=(1) mu=2
meta.degree: 3
meta.singularity: A5A1
meta.rho: 1
meta.kstable: false
meta.xi: (-1.24607)
---
ksol-variety v1
id: dp/14
dimension: 1
box: (-1) (5)
phi.0: piece v=(1) mu=3; piece v=(0) mu=1
phi.inf: piece v=(1) mu=3
phi.1: piece v=(-1) mu=2
meta.degree: 3
meta.singularity: E6
meta.rho: 1
meta.kstable: true
meta.xi: (-1.96766)
---
ksol-variety v1
id: dp/15
dimension: 1
box: (-1) (2)
phi.0: piece v=(1) mu=2; piece v=(0) mu=1
phi.inf: piece v=(-1) mu=1; piece v=(0) mu=1
phi.1: piece v=(1) mu=3
meta.degree: 3
meta.singularity: A4A1
meta.rho: 2
meta.kstable: true
meta.xi: (-1.19618)
---
ksol-variety v1
id: dp/16
dimension: 1
box: (-1) (1)
phi.0: piece v=(-1) mu=1; piece v=(1) mu=1
phi.inf: piece v=(-1) mu=1; piece v=(0) mu=1
phi.1: piece v=(1) mu=2
meta.degree: 3
meta.singularity: 2A2A1
meta.rho: 2
meta.kstable: false
meta.xi: (0)
meta.note: transcription: a stray min wrapper around the last function was dropped; values on the box are unchanged
---
ksol-variety v1
id: dp/17
dimension: 1
box: (-1) (3)
phi.0: piece v=(1) mu=3; piece v=(0) mu=1
phi.inf: piece v=(1) mu=2; piece v=(0) mu=1
phi.1: piece v=(-1) mu=2
meta.degree: 3
meta.singularity: D5
meta.rho: 2
meta.kstable: true
meta.xi: (-1.83879)
---
ksol-variety v1
id: dp/18
dimension: 1
box: (-1) (1)
phi.0: piece v=(0) mu=1; piece v=(1) mu=1
phi.inf: piece v=(-1) mu=1; piece v=(0) mu=1
phi.1: piece v=(-1) mu=1; piece v=(0) mu=1
phi.c: piece v=(1) mu=2
meta.degree: 3
meta.singularity: 2A2
meta.rho: 3
meta.kstable: false
meta.xi: (0)
meta.note: transcription: a stray min wrapper around the last function was dropped; values on the box are unchanged
---
ksol-variety v1
id: dp/19
dimension: 1
box: (-1) (2)
phi.0: piece v=(-1) mu=1; piece v=(-1) mu=2
phi.inf: piece v=(0) mu=1; piece v=(1) mu=2
phi.1: piece v=(0) mu=1; piece v=(1) mu=2
meta.degree: 3
meta.singularity: D4
meta.rho: 3
meta.kstable: true
meta.xi: (-1.69131)
---
ksol-variety v1
id: dp/20
dimension: 1
box: (-1) (1)
phi.0: piece v=(0) mu=1; piece v=(1) mu=1
phi.inf: piece v=(1) mu=2
phi.1: piece v=(-1) mu=2
meta.degree: 3
meta.singularity: A32A1
meta.rho: 2
meta.kstable: true
meta.xi: (-0.94468)
---
ksol-variety v1
id: dp/21
dimension: 1
box: (-1) (5)
phi.0: piece v=(1) mu=2; piece v=(0) mu=1
phi.inf: piece v=(1) mu=3
phi.1: piece v=(-1) mu=2
meta.degree: 4
meta.singularity: D5
meta.rho: 1
meta.kstable: true
meta.xi: (-1.85969)
---
ksol-variety v1
id: dp/22
dimension: 1
box: (-1) (2)
phi.0: piece v=(0) mu=1; piece v=(1) mu=1
phi.inf: piece v=(0) mu=1; piece v=(1) mu=1
phi.1: piece v=(-2) mu=3
meta.degree: 4
meta.singularity: A3A1
meta.rho: 2
meta.kstable: false
meta.xi: (-0.97052)
---
ksol-variety v1
id: dp/23
dimension: 1
box: (-1) (3)
phi.0: piece v=(1) mu=2; piece v=(0) mu=1
phi.inf: piece v=(1) mu=2; piece v=(0) mu=1
phi.1: piece v=(-1) mu=2
meta.degree: 4
meta.singularity: D4
meta.rho: 2
meta.kstable: true
meta.xi: (-1.79675)
---
ksol-variety v1
id: dp/24
dimension: 1
box: (-1) (3)
phi.0: piece v=(1) mu=3; piece v=(0) mu=1
phi.inf: piece v=(1) mu=1; piece v=(0) mu=1
phi.1: piece v=(-1) mu=2
meta.degree: 4
meta.singularity: A4
meta.rho: 2
meta.kstable: true
meta.xi: (-1.38176)
---
ksol-variety v1
id: dp/25
dimension: 1
box: (-1) (1)
phi.0: piece v=(0) mu=1; piece v=(2) mu=1
phi.inf: piece v=(-1) mu=1; piece v=(0) mu=1
phi.1: piece v=(-1) mu=1; piece v=(0) mu=1
meta.degree: 4
meta.singularity: 3A1
meta.rho: 3
meta.kstable: false
meta.xi: (0)
---
ksol-variety v1
id: dp/26
dimension: 1
box: (-1) (2)
phi.0: piece v=(-1) mu=1; piece v=(0) mu=1
phi.inf: piece v=(0) mu=1; piece v=(1) mu=2
phi.1: piece v=(0) mu=1; piece v=(1) mu=2
meta.degree: 4
meta.singularity: A3
meta.rho: 3
meta.kstable: true
meta.xi: (-1.31047)
---
ksol-variety v1
id: dp/27
dimension: 1
box: (-1) (1)
phi.0: piece v=(0) mu=1; piece v=(1) mu=1
phi.inf: piece v=(0) mu=1; piece v=(1) mu=1
phi.1: piece v=(-1) mu=1; piece v=(0) mu=1
phi.c: piece v=(-1) mu=1; piece v=(0) mu=1
meta.degree: 4
meta.singularity: 2A1
meta.rho: 4
meta.kstable: true
meta.xi: (0)
---
ksol-variety v1
id: dp/28
dimension: 1
box: (-1) (1)
phi.0: piece v=(0) mu=1; piece v=(1) mu=1
phi.inf: piece v=(0) mu=1; piece v=(1) mu=1
phi.1: piece v=(-1) mu=2
meta.degree: 4
meta.singularity: A2A1
meta.rho: 3
meta.kstable: false
meta.xi: (-0.74373)
---
ksol-variety v1
id: dp/29
dimension: 1
box: (-1) (5)
phi.0: piece v=(-1) mu=1; piece v=(0) mu=1
phi.inf: piece v=(1) mu=3
phi.1: piece v=(1) mu=2
meta.degree: 5
meta.singularity: A4
meta.rho: 1
meta.kstable: true
meta.xi: (-1.42059)
---
ksol-variety v1
id: dp/30
dimension: 1
box: (-1) (3)
phi.0: piece v=(1) mu=2; piece v=(0) mu=1
phi.inf: piece v=(1) mu=1; piece v=(0) mu=1
phi.1: piece v=(-1) mu=2
meta.degree: 5
meta.singularity: A3
meta.rho: 2
meta.kstable: true
meta.xi: (-1.43886)
---
ksol-variety v1
id: dp/31
dimension: 1
box: (-1) (2)
phi.0: piece v=(0) mu=1; piece v=(1) mu=1
phi.inf: piece v=(0) mu=1; piece v=(1) mu=1
phi.1: piece v=(-1) mu=1; piece v=(-1) mu=2
meta.degree: 5
meta.singularity: A2
meta.rho: 3
meta.kstable: false
meta.xi: (-1.10613)
meta.note: transcription: last function rewritten from min of 0 and (-u-1)/2, which breaks graph integrality and the degree; the shipped min of -u and (-u-1)/2 restores both and matches the published destabilising fiber
---
ksol-variety v1
id: dp/32
dimension: 1
box: (-1) (1)
phi.0: piece v=(0) mu=1; piece v=(1) mu=1
phi.inf: piece v=(0) mu=1; piece v=(1) mu=1
phi.1: piece v=(-1) mu=1; piece v=(0) mu=1
meta.degree: 5
meta.singularity: A1
meta.rho: 4
meta.kstable: true
meta.xi: (-0.6179)
---
ksol-variety v1
id: dp/33
dimension: 1
box: (-1) (3)
phi.0: piece v=(0) mu=1; piece v=(1) mu=1
phi.inf: piece v=(0) mu=1; piece v=(1) mu=1
phi.1: piece v=(-1) mu=2
meta.degree: 6
meta.singularity: A2
meta.rho: 2
meta.kstable: false
meta.xi: (-1.24607)
---
ksol-variety v1
id: dp/34
dimension: 1
box: (-1) (2)
phi.0: piece v=(-1) mu=1; piece v=(0) mu=1
phi.inf: piece v=(0) mu=1; piece v=(1) mu=1
phi.1: piece v=(0) mu=1; piece v=(1) mu=1
meta.degree: 6
meta.singularity: A1
meta.rho: 3
meta.kstable: true
meta.xi: (-0.97052)
---
ksol-variety v1
id: 3fold/2.30
dimension: 2
box: (-3,0) (-2,1) (2,1) (3,0) (0,-3)
phi.0: piece v=(0,0) mu=1; piece v=(-1,0) mu=1
phi.1: piece v=(0,0) mu=1; piece v=(0,1) mu=1
phi.inf: piece v=(1,-1) mu=2
meta.degree: 46
meta.singularity: smooth
meta.kstable: true
meta.xi: (0,0.51489)
---
ksol-variety v1
id: 3fold/3.23
dimension: 2
box: (-3,0) (-2,1) (1,1) (2,0) (2,-1) (0,-3)
phi.0: piece v=(0,0) mu=1; piece v=(-1,0) mu=1
phi.1: piece v=(0,0) mu=1; piece v=(0,1) mu=1
phi.inf: piece v=(0,-1) mu=1; piece v=(1,-1) mu=2
meta.degree: 42
meta.singularity: smooth
meta.kstable: true
meta.xi: (0.26618,0.67164)
)KSOL";

}  // namespace

const std::vector<CatalogEntry>& load_builtin() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> out;
        std::string doc;
        std::istringstream in(kBuiltinData);
        std::string line;
        auto flush = [&] {
            if (doc.find_first_not_of(" \t\r\n") == std::string::npos) return;
            out.push_back(parse_entry(doc, "builtin #" + std::to_string(out.size() + 1)));
            doc.clear();
        };
        while (std::getline(in, line)) {
            if (strip(line) == "---") {
                flush();
                continue;
            }
            doc += line;
            doc += '\n';
        }
        flush();
        return out;
    }();
    return entries;
}

}  // namespace ksol
