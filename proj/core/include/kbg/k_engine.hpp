#pragma once

#include "kbg/descriptor.hpp"
#include "kbg/rules.hpp"
#include "kbg/six_term.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace kbg {

// Where a K0 generator of the result comes from: a rank-one projection over
// a stratum's leaves (Fredholm class) or a symbol class lifted from the
// quotient, the latter identified only up to the image of the inclusion.
struct GeneratorOrigin {
    enum class Kind { Fredholm, Symbol };
    Kind kind = Kind::Fredholm;
    std::size_t stratum = 0;
    int components = 1;

    bool operator==(const GeneratorOrigin&) const = default;
};

std::string to_string(const GeneratorOrigin& o);

struct TraceStep {
    std::size_t level;
    std::string kind; // "seed" | "rule" | "solve" | "exactness" | "note"
    std::string text;

    bool operator==(const TraceStep&) const = default;
};

std::string trace_to_text(const std::vector<TraceStep>& trace);

struct KResult {
    AbelianGroup k0, k1;
    // One entry per K0 generator, in generator order.
    std::vector<GeneratorOrigin> provenance;
    std::vector<TraceStep> trace;
    // Solved sequences indexed by composition-series level.
    std::vector<SixTermSequence> sequences;
};

// The derivation stopped at a level the rule base does not cover, or at an
// extension with more than one solution. Nothing is guessed past this point.
struct PartialSolution {
    std::size_t level = 0;
    std::string slot;
    std::string reason;
    std::string detail;
    std::vector<TraceStep> trace;
};

using ComputeOutcome = std::variant<KResult, PartialSolution>;

// Walks the composition series from the deepest stratum outward: seeds with
// that stratum's K-groups, then per level builds the six-term sequence with
// the ideal stratum's groups and the previous result, fills the connecting
// maps from the rule base and solves for the two unknown nodes.
ComputeOutcome compute_k(const GroupoidDescriptor& d);

struct UnsupportedCaseError : std::runtime_error {
    explicit UnsupportedCaseError(const std::string& what) : std::runtime_error(what) {}
};

// The inclusion K0(ideal) -> K0(algebra) of the outermost sequence, for
// depth-one groupoids: the cokernel projection of the index map followed by
// the summand injection, with the sign normalized so the first listed
// component maps positively.
Homomorphism fredholm_inclusion(const GroupoidDescriptor& d, const KResult& res);

} // namespace kbg
