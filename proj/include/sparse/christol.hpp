#pragma once

// Automata and series: coefficients of DFAO-defined series, empirical
// p-kernel automata for solutions of algebraic equations, support
// classification, and certificates that rebuild sparse series from monomials
// with the Artin-Schreier operators.

#include "sparse/series.hpp"
#include "sparse/sparse_analysis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sparse {

/// f(n) = run(M, base-p digits of n), output codes mapped through from_index.
TruncatedSeries dfao_to_series(const Dfao& m, const GaloisField& field, std::uint64_t n);

/// Where a series comes from: an automaton (exact) or an equation with a seed (empirical).
struct SeriesSource {
    const GaloisField* field = nullptr;
    std::optional<Dfao> machine;
    std::optional<AlgebraicEquation> equation;
    std::vector<FieldElement> seed;

    static SeriesSource from_dfao(Dfao m, const GaloisField& field);
    static SeriesSource from_equation(AlgebraicEquation eq, std::vector<FieldElement> seed);
};

struct EmpiricalOptions {
    std::uint64_t precision = 4096;     // coefficients computed and validated on [0, precision)
    std::uint64_t min_agreement = 16;   // kernel subsequences are compared on at least this many terms
    std::size_t state_cap = 10000;
};

struct CoefficientAutomaton {
    Dfao machine;                   // output codes are field element indices
    bool empirical = false;
    std::uint64_t precision = 0;    // empirical only
    std::uint64_t min_agreement = 0;
};

/// p-kernel automaton (least significant digit first) of a coefficient stream.
/// Throws CapExceeded when the kernel does not close below the state cap or
/// needs subsequences known on fewer than min_agreement terms.
Dfao kernel_automaton(const TruncatedSeries& f, const EmpiricalOptions& opts = {});

CoefficientAutomaton coefficient_automaton(const SeriesSource& src, const EmpiricalOptions& opts = {});

/// Minimal acceptor of {n : f(n) != 0} over the digit alphabet.
Acceptor support_acceptor(const SeriesSource& src, const EmpiricalOptions& opts = {});

// ---------------------------------------------------------------------------
// certificates

enum class StepKind { Seed, ScaleVar, SubstPower, ASPower, ASSubst, GapSum, Add, Mul, FrobTwist };

const char* step_name(StepKind k);
std::optional<StepKind> parse_step_kind(const std::string& name);

struct CertificateStep {
    StepKind kind = StepKind::Seed;
    std::vector<std::size_t> args;  // earlier step indices: one for unary steps, two for Add and Mul
    FieldElement coeff;             // Seed coefficient, ScaleVar alpha
    Rational exponent;              // Seed exponent
    Rational c = 1, d = 0;          // SubstPower: t^d F(t^c)
    std::uint32_t gap = 1;          // GapSum
    std::int64_t twist = 0;         // FrobTwist: F^(p^twist)
};

/// The series of the last step; an empty certificate denotes 0.
struct Certificate {
    const GaloisField* field = nullptr;
    std::vector<CertificateStep> steps;

    std::size_t seed(const FieldElement& c, const Rational& e);
    std::size_t unary(StepKind kind, std::size_t arg);
    std::size_t subst_power(std::size_t arg, const Rational& c, const Rational& d);
    std::size_t gap_sum(std::size_t arg, std::uint32_t d);
    std::size_t binary(StepKind kind, std::size_t a, std::size_t b);
    /// Appends another certificate's steps; returns the index of its result.
    std::size_t append(const Certificate& other);
    void validate() const;
};

/// Evaluates every step on the window its consumers need, so the result is
/// exact on `w`. A failing step is reported as PreconditionError naming its index.
GenSeries replay(const Certificate& c, const Window& w);
TruncatedSeries replay(const Certificate& c, std::uint64_t n);

/// Certificate for sum over the form's values of value * t^x. Requires
/// canonical words, a unique parse for every word, and a well-ordered set
/// when the form has a radix.
Certificate certify_sparse(const SimpleSparseForm& f, const FieldElement& value);

struct CertificateCheck {
    bool ok = true;
    std::optional<Rational> mismatch;  // lowest differing exponent
};

CertificateCheck verify_certificate(const Certificate& c, const TruncatedSeries& target, std::uint64_t n);
CertificateCheck verify_certificate(const Certificate& c, const GenSeries& target, const Window& w);

// ---------------------------------------------------------------------------
// classification

struct SparseComponent {
    SimpleSparseForm form;
    ClosedForm closed;
    FieldElement value;
};

struct SeriesClassification {
    bool sparse = true;
    bool empirical = false;
    std::uint64_t precision = 0;       // empirical kernel precision
    std::uint64_t min_agreement = 0;
    Acceptor support;
    // sparse verdict
    std::vector<SparseComponent> components;
    Certificate certificate;
    std::uint64_t replay_precision = 0;
    CertificateCheck replay_check;     // certificate against the coefficients
    // non-sparse verdict
    std::optional<PumpWitness> witness;
    double alpha = 0.0;
    double beta = 0.0;
};

struct ClassifyOptions {
    EmpiricalOptions empirical;
    AnalysisOptions analysis;
    std::uint64_t replay_precision = 1024;
};

SeriesClassification classify_series(const SeriesSource& src, const ClassifyOptions& opts = {});

// ---------------------------------------------------------------------------
// quasi-automatic series

/// f(alpha) = run(machine, encode_sp(a alpha + b)) when a alpha + b lies in S_p, else 0.
struct QuasiAutomatic {
    Rational a = 1, b = 0;
    Dfao machine;  // over {0..p-1, radix}
    const GaloisField* field = nullptr;
};

FieldElement quasi_eval(const QuasiAutomatic& q, const Rational& alpha);

}  // namespace sparse
