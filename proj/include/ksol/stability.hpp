// Soliton candidates and K-stability certification.
//
// The candidate vector field is the unique xi with vanishing Futaki character;
// it is certified either exactly (rational first moment of the fiber polytope
// vanishes), by an intermediate-value bracket on a symmetry-forced axis, or by
// a positive outward gradient along the boundary of a small box. The verdict
// then certifies the sign of the Donaldson-Futaki invariant of X_{y,0,1} for
// every admissible y, with the candidate box substituted for xi so the signs
// hold for the true candidate.
#ifndef KSOL_STABILITY_HPP
#define KSOL_STABILITY_HPP

#include <optional>
#include <variant>

#include "ksol/divisorial.hpp"
#include "ksol/expint.hpp"
#include "ksol/parallel.hpp"

namespace ksol {

struct NoSignChange : std::runtime_error {
    NoSignChange() : std::runtime_error("no certified sign change in the search window") {}
};
struct PrecisionExhausted : std::runtime_error {
    PrecisionExhausted() : std::runtime_error("sign undecided at the precision cap") {}
};
struct BoundaryFailure : std::runtime_error {
    int edge;
    long segment;
    BoundaryFailure(int e, long s)
        : std::runtime_error("boundary gradient sign not certified (edge " + std::to_string(e) +
                             ", segment " + std::to_string(s) + ")"),
          edge(e),
          segment(s) {}
};
struct InadmissibleY : std::runtime_error {
    InadmissibleY() : std::runtime_error("test configuration point is not admissible") {}
};

struct RunConfig {
    int precision_start = 53;
    int max_bits = 4096;
    double candidate_width = 1e-5;  // bisection target for 1-D brackets
    double epsilon = 1e-5;          // half side length of the 2-D candidate box
    long segments = 1500;           // boundary subdivisions per edge
    Exec exec = Exec::Parallel;

    Precision start() const { return Precision(precision_start); }
    Precision cap() const { return Precision(max_bits); }
};

enum class Normalization { Raw, VolumeNormalized };

struct FutakiEvaluation {
    IntervalScalar value;
    IntervalVector xi;
    QVector direction;
    Normalization normalization = Normalization::VolumeNormalized;
};

struct EvidenceZeroField {
    bool forced_by_symmetry = false;  // a symmetry with trivial fixed space exists
};
struct EvidenceIVT1D {
    QVector axis;
    Rational lower, upper;  // certified bracket endpoints (dyadic rationals)
    Sign sign_lower = Sign::Unknown;
    Sign sign_upper = Sign::Unknown;
    int precision_bits = 53;
};
struct EvidenceBoxGradient {
    std::vector<double> center;
    double epsilon = 0;
    long segments = 0;
    double min_gradient_lower = 0;        // certified global lower bound of grad_n G
    std::vector<double> edge_minima;      // per edge, same certified rounding
    int min_edge = 0;
    long min_segment = 0;
    int precision_bits = 53;
};
using CandidateEvidence = std::variant<EvidenceZeroField, EvidenceIVT1D, EvidenceBoxGradient>;

struct SolitonCandidate {
    IntervalVector box;  // certified to contain the unique zero of the Futaki character
    CandidateEvidence evidence;
    std::optional<Symmetry> symmetry_used;

    bool is_zero_field() const { return std::holds_alternative<EvidenceZeroField>(evidence); }
};

struct TestConfigurationId {
    DegenerationPoint y;
    std::vector<long> v;  // one-parameter subgroup part; certification uses 0
    long m = 1;

    std::string name() const;
    bool operator==(const TestConfigurationId&) const = default;
};

enum class StabilityStatus { Stable, Unstable, KahlerEinsteinCandidate, Indeterminate };
std::string to_string(StabilityStatus s);

struct DfResult {
    TestConfigurationId tc;
    IntervalScalar value;  // raw (volume-scaled) invariant
    Sign sign = Sign::Unknown;
};

struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::Indeterminate;
    SolitonCandidate candidate;
    std::vector<DfResult> df_results;
    std::optional<TestConfigurationId> destabilizer;
    int precision_used = 53;
};

// (1/vol Delta) int_Delta <u', v'> e^{<u', xi'>} du' (or the raw integral).
FutakiEvaluation futaki_character(const FiberPolytope& delta, const IntervalVector& xi_prime,
                                  const QVector& v_prime,
                                  Normalization norm = Normalization::VolumeNormalized);

// F_{X,xi}(v), evaluated over the special fiber of the first support point
// (the lifted integrand does not depend on the last coordinate, so the choice
// is immaterial).
FutakiEvaluation futaki(const DivisorialPolytope& dp, const IntervalVector& xi, const QVector& v,
                        Normalization norm = Normalization::VolumeNormalized);

// Certified bracket for the root of t -> F_{X, t*axis}(axis). `hint` seeds the
// non-certified search; the bracket is then expanded and bisected with
// certified signs until the width target is met.
SolitonCandidate candidate_1d(const DivisorialPolytope& dp, const QVector& axis,
                              std::optional<double> hint, const RunConfig& cfg);

// Certifies grad_n G > 0 along the boundary of the box center +- epsilon
// (outer normal n), which traps the candidate inside. Two-dimensional only.
SolitonCandidate candidate_box(const DivisorialPolytope& dp, const std::vector<double>& center,
                               double epsilon, long segments, const RunConfig& cfg);

// Raw Donaldson-Futaki invariant of X_{y,v,m} with xi ranging over the
// candidate box: int_{Delta_y} <u', (-m v, m)> e^{<u', (xi,0)>} du'.
IntervalScalar donaldson_futaki(const DivisorialPolytope& dp, const TestConfigurationId& tc,
                                const SolitonCandidate& candidate, const RunConfig& cfg);

// Full pipeline: candidate, admissible set, per-y DF signs, verdict.
StabilityVerdict certify(const DivisorialPolytope& dp, const RunConfig& cfg);

// k-th finite-dimensional approximation of the Futaki character of a toric
// fiber: sum_{u in k*Delta} <u,v'> e^{<u,xi'>/k} / (k * #points); converges to
// futaki_character with an O(1/k) gap.
IntervalScalar discrete_futaki(const FiberPolytope& delta, const IntervalVector& xi_prime,
                               const QVector& v_prime, long k, long budget = 50'000'000);

// Non-certified double-precision zero of grad G, used to seed candidate_box.
std::vector<double> soliton_hint(const DivisorialPolytope& dp);
// Non-certified root of t -> F_{X, t*axis}(axis).
double soliton_hint_1d(const DivisorialPolytope& dp, const QVector& axis);

// Recomputes the candidate's evidence from scratch at its recorded precision.
// With full=false, BoxGradient evidence is spot-checked on a deterministic
// subsample of segments (including the recorded minimum).
bool verify_candidate(const DivisorialPolytope& dp, const SolitonCandidate& cand, bool full,
                      const RunConfig& cfg);

// Rebuilds the candidate box at a given precision from its exact endpoints.
IntervalVector rebuild_box(const IntervalVector& box, Precision p);

}  // namespace ksol

#endif
