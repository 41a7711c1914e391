#include "ksol/report.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace ksol {

namespace {

constexpr int kDigits = 20;

std::string fmt(double d) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    (void)ec;
    return std::string(buf, end);
}

double parse_double(const std::string& s) {
    return std::strtod(s.c_str(), nullptr);
}

std::string sign_name(Sign s) {
    switch (s) {
        case Sign::Positive: return "positive";
        case Sign::Negative: return "negative";
        case Sign::Unknown: return "unknown";
    }
    return "?";
}

Sign sign_from_name(const std::string& s) {
    if (s == "positive") return Sign::Positive;
    if (s == "negative") return Sign::Negative;
    return Sign::Unknown;
}

std::string join_doubles(const std::vector<double>& v) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << fmt(v[i]);
    }
    os << ')';
    return os.str();
}

std::vector<std::string> split_tuple(const std::string& s) {
    // "(a,b,c)" -> tokens
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == ' ') continue;
        if (c == ',' || c == ')') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
            continue;
        }
        cur += c;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// "key=value" fields separated by spaces, values never contain spaces
std::map<std::string, std::string> fields(const std::string& s) {
    std::map<std::string, std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        const size_t eq = tok.find('=');
        if (eq != std::string::npos) out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return out;
}

std::string evidence_line(const CandidateEvidence& ev) {
    std::ostringstream os;
    if (const auto* zf = std::get_if<EvidenceZeroField>(&ev)) {
        os << "zero-field forced-by-symmetry=" << (zf->forced_by_symmetry ? "true" : "false");
    } else if (const auto* iv = std::get_if<EvidenceIVT1D>(&ev)) {
        os << "ivt1d axis=" << to_string(iv->axis) << " lower=" << to_string(iv->lower)
           << " upper=" << to_string(iv->upper) << " sign-lower=" << sign_name(iv->sign_lower)
           << " sign-upper=" << sign_name(iv->sign_upper) << " bits=" << iv->precision_bits;
    } else {
        const auto& bg = std::get<EvidenceBoxGradient>(ev);
        os << "box-gradient center=" << join_doubles(bg.center) << " epsilon=" << fmt(bg.epsilon)
           << " segments=" << bg.segments << " min-lower=" << fmt(bg.min_gradient_lower)
           << " edge-minima=" << join_doubles(bg.edge_minima) << " min-edge=" << bg.min_edge
           << " min-segment=" << bg.min_segment << " bits=" << bg.precision_bits;
    }
    return os.str();
}

CandidateEvidence parse_evidence(const std::string& line) {
    std::istringstream in(line);
    std::string kind;
    in >> kind;
    const auto f = fields(line);
    if (kind == "zero-field") {
        EvidenceZeroField zf;
        zf.forced_by_symmetry = f.at("forced-by-symmetry") == "true";
        return zf;
    }
    if (kind == "ivt1d") {
        EvidenceIVT1D iv;
        for (const auto& t : split_tuple(f.at("axis"))) iv.axis.push_back(parse_rational(t));
        iv.lower = parse_rational(f.at("lower"));
        iv.upper = parse_rational(f.at("upper"));
        iv.sign_lower = sign_from_name(f.at("sign-lower"));
        iv.sign_upper = sign_from_name(f.at("sign-upper"));
        iv.precision_bits = std::stoi(f.at("bits"));
        return iv;
    }
    if (kind == "box-gradient") {
        EvidenceBoxGradient bg;
        for (const auto& t : split_tuple(f.at("center"))) bg.center.push_back(parse_double(t));
        bg.epsilon = parse_double(f.at("epsilon"));
        bg.segments = std::stol(f.at("segments"));
        bg.min_gradient_lower = parse_double(f.at("min-lower"));
        for (const auto& t : split_tuple(f.at("edge-minima")))
            bg.edge_minima.push_back(parse_double(t));
        bg.min_edge = std::stoi(f.at("min-edge"));
        bg.min_segment = std::stol(f.at("min-segment"));
        bg.precision_bits = std::stoi(f.at("bits"));
        return bg;
    }
    throw std::runtime_error("unknown evidence kind '" + kind + "'");
}

}  // namespace

ReportCase build_case_report(const CatalogEntry& entry, const StabilityVerdict& verdict,
                             const RunConfig& cfg) {
    ReportCase rc;
    rc.id = entry.id;
    rc.verdict = to_string(verdict.status);
    rc.precision_used = verdict.precision_used;
    rc.degree = to_string(degree(entry.dp));
    rc.cox = cox_ring(entry.dp).polynomial_text();
    for (const auto& y : admissible_points(entry.dp)) rc.admissible.push_back(y.name());
    rc.symmetry_count = static_cast<int>(symmetries(entry.dp).size());
    for (const auto& c : verdict.candidate.box)
        rc.box_decimals.emplace_back(c.decimal_lower(kDigits), c.decimal_upper(kDigits));
    rc.evidence = verdict.candidate.evidence;
    for (const auto& r : verdict.df_results)
        rc.dfs.push_back({r.tc.y.name(), r.value.decimal_lower(kDigits),
                          r.value.decimal_upper(kDigits), sign_name(r.sign)});
    if (verdict.destabilizer) rc.destabilizer = verdict.destabilizer->y.name();
    return rc;
}

std::string Report::render() const {
    std::ostringstream os;
    os << "ksol-report v1\n";
    os << "config.precision: " << config.precision_start << '\n';
    os << "config.max-bits: " << config.max_bits << '\n';
    os << "config.candidate-width: " << fmt(config.candidate_width) << '\n';
    os << "config.epsilon: " << fmt(config.epsilon) << '\n';
    os << "config.segments: " << config.segments << '\n';
    for (const auto& rc : cases) {
        os << "case: " << rc.id << '\n';
        os << "verdict: " << rc.verdict << '\n';
        os << "precision: " << rc.precision_used << '\n';
        os << "degree: " << rc.degree << '\n';
        os << "cox: " << rc.cox << '\n';
        os << "admissible:";
        for (const auto& a : rc.admissible) os << ' ' << a;
        os << '\n';
        os << "symmetries: " << rc.symmetry_count << '\n';
        for (const auto& [lo, hi] : rc.box_decimals)
            os << "candidate.box: [" << lo << ", " << hi << "]\n";
        os << "candidate.evidence: " << evidence_line(rc.evidence) << '\n';
        for (const auto& df : rc.dfs)
            os << "df y=" << df.y << ": [" << df.lower << ", " << df.upper
               << "] sign=" << df.sign << '\n';
        if (rc.destabilizer) os << "destabilizer: y=" << *rc.destabilizer << '\n';
        if (rc.expected) os << "expected: " << *rc.expected << '\n';
        os << "end-case\n";
    }
    return os.str();
}

Report Report::parse(const std::string& text) {
    Report rep;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "ksol-report v1")
        throw std::runtime_error("not a ksol report");
    ReportCase cur;
    bool in_case = false;
    auto value_of = [](const std::string& l) {
        const size_t c = l.find(": ");
        return c == std::string::npos ? std::string() : l.substr(c + 2);
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("config.precision:", 0) == 0)
            rep.config.precision_start = std::stoi(value_of(line));
        else if (line.rfind("config.max-bits:", 0) == 0)
            rep.config.max_bits = std::stoi(value_of(line));
        else if (line.rfind("config.candidate-width:", 0) == 0)
            rep.config.candidate_width = parse_double(value_of(line));
        else if (line.rfind("config.epsilon:", 0) == 0)
            rep.config.epsilon = parse_double(value_of(line));
        else if (line.rfind("config.segments:", 0) == 0)
            rep.config.segments = std::stol(value_of(line));
        else if (line.rfind("case:", 0) == 0) {
            cur = ReportCase{};
            cur.id = value_of(line);
            in_case = true;
        } else if (!in_case) {
            continue;
        } else if (line.rfind("verdict:", 0) == 0)
            cur.verdict = value_of(line);
        else if (line.rfind("precision:", 0) == 0)
            cur.precision_used = std::stoi(value_of(line));
        else if (line.rfind("degree:", 0) == 0)
            cur.degree = value_of(line);
        else if (line.rfind("cox:", 0) == 0)
            cur.cox = value_of(line);
        else if (line.rfind("admissible:", 0) == 0) {
            std::istringstream as(line.substr(11));
            std::string a;
            while (as >> a) cur.admissible.push_back(a);
        } else if (line.rfind("symmetries:", 0) == 0)
            cur.symmetry_count = std::stoi(value_of(line));
        else if (line.rfind("candidate.box:", 0) == 0) {
            const std::string v = value_of(line);
            const size_t comma = v.find(", ");
            cur.box_decimals.emplace_back(v.substr(1, comma - 1),
                                          v.substr(comma + 2, v.size() - comma - 3));
        } else if (line.rfind("candidate.evidence:", 0) == 0)
            cur.evidence = parse_evidence(value_of(line));
        else if (line.rfind("df y=", 0) == 0) {
            ReportCase::Df df;
            const size_t colon = line.find(": [");
            df.y = line.substr(5, colon - 5);
            const size_t comma = line.find(", ", colon);
            const size_t close = line.find(']', comma);
            df.lower = line.substr(colon + 3, comma - colon - 3);
            df.upper = line.substr(comma + 2, close - comma - 2);
            df.sign = line.substr(line.find("sign=") + 5);
            cur.dfs.push_back(std::move(df));
        } else if (line.rfind("destabilizer:", 0) == 0)
            cur.destabilizer = value_of(line).substr(2);  // strip "y="
        else if (line.rfind("expected:", 0) == 0)
            cur.expected = value_of(line);
        else if (line == "end-case") {
            rep.cases.push_back(std::move(cur));
            in_case = false;
        }
    }
    return rep;
}

bool verify_case(const ReportCase& rc, const DivisorialPolytope& dp, bool full,
                 const RunConfig& cfg) {
    // rebuild the candidate from the reported evidence
    SolitonCandidate cand;
    cand.evidence = rc.evidence;
    const int n = dp.dim();
    const Precision p0 = cfg.start();
    if (const auto* zf = std::get_if<EvidenceZeroField>(&rc.evidence)) {
        (void)zf;
        cand.box = IntervalVector::zeros(n, p0);
    } else if (const auto* iv = std::get_if<EvidenceIVT1D>(&rc.evidence)) {
        std::vector<IntervalScalar> comps;
        for (const auto& c : iv->axis) {
            Rational a = c * iv->lower, b = c * iv->upper;
            if (a > b) std::swap(a, b);
            comps.push_back(IntervalScalar::from_rationals(a, b, p0));
        }
        cand.box = IntervalVector(std::move(comps));
    } else {
        const auto& bg = std::get<EvidenceBoxGradient>(rc.evidence);
        std::vector<IntervalScalar> comps;
        for (double c : bg.center) {
            Rational q;
            mpq_set_d(q.get_mpq_t(), c);
            Rational e;
            mpq_set_d(e.get_mpq_t(), bg.epsilon);
            comps.push_back(IntervalScalar::from_rationals(q - e, q + e, p0));
        }
        cand.box = IntervalVector(std::move(comps));
    }
    if (!verify_candidate(dp, cand, full, cfg)) return false;

    // recompute every reported DF sign at the reported precision
    for (const auto& df : rc.dfs) {
        const auto mp = MarkedPoint::from_name(df.y);
        const DegenerationPoint y =
            mp ? DegenerationPoint::at(*mp) : DegenerationPoint::generic();
        const FiberPolytope delta = special_fiber(dp, y);
        QVector v_prime(n, Rational(0));
        v_prime.push_back(Rational(1));
        const IntervalScalar value = integrate_linear_exp(
            delta.polytope, rebuild_box(cand.box, Precision(rc.precision_used)).lifted(),
            v_prime);
        if (sign_name(value.sign()) != df.sign &&
            !(value.is_exact_zero() && df.sign == "unknown"))
            return false;
    }
    return true;
}

}  // namespace ksol
