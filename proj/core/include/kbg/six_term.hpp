#pragma once

#include "kbg/abelian_group.hpp"
#include "kbg/homomorphism.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace kbg {

// Cyclic six-term sequence with the fixed orientation
//
//   K0(I) -> K0(A) -> K0(A/I) -> K1(I) -> K1(A) -> K1(A/I) -> K0(I)
//
// position 2 -> 3 is the exponential connecting map, position 5 -> 0 the
// index connecting map. Nodes and maps may be left unknown; map i runs from
// node i to node (i+1) mod 6.
//
// Some sources typeset the rank-two even-parity instance with the infinite
// cyclic summands on the K1 row; that layout is inconsistent with the
// orientation above, which is the one every solver path here assumes and the
// one that reproduces K0 of rank two in the even case.
class SixTermSequence {
public:
    static constexpr std::size_t kNodes = 6;
    static constexpr std::size_t kExpMap = 2;   // K0(A/I) -> K1(I)
    static constexpr std::size_t kIndexMap = 5; // K1(A/I) -> K0(I)

    SixTermSequence();

    static const std::array<std::string, kNodes>& node_names();

    void set_node(std::size_t i, AbelianGroup g);
    void clear_node(std::size_t i);
    void set_map(std::size_t i, Homomorphism h);

    const std::optional<AbelianGroup>& node(std::size_t i) const { return nodes_[i]; }
    const std::optional<Homomorphism>& map(std::size_t i) const { return maps_[i]; }

    bool fully_known() const;

    // Known maps whose recorded endpoints disagree with the node slots.
    std::vector<std::string> structural_errors() const;

private:
    std::array<std::optional<AbelianGroup>, kNodes> nodes_;
    std::array<std::optional<Homomorphism>, kNodes> maps_;
};

enum class NodeVerdict { Exact, ImageStrictlySmaller, ImageNotContained };

struct NodeExactness {
    std::size_t node;
    NodeVerdict verdict;
    // For a failure: a generator witnessing it, as coordinates in the node
    // group (an image generator outside the kernel, or a kernel generator
    // outside the image).
    std::optional<IntVec> witness;
    std::string detail;
};

struct ExactnessReport {
    // Endpoint mismatches and missing data; when nonempty no verdicts are
    // attempted.
    std::vector<std::string> structural;
    std::vector<NodeExactness> nodes;

    bool all_exact() const;
};

// Requires every node and map to be present; mismatched endpoints are
// reported as structural errors rather than verdicts.
ExactnessReport check_exactness(const SixTermSequence& seq);

enum class SolveStatus { Solved, Partial, Contradiction };

enum class BlockReason { MissingAdjacentData, AmbiguousExtension };

struct UnresolvedNode {
    std::size_t node;
    BlockReason reason;
    std::optional<AmbiguousExtension> ambiguity;
    std::string detail;
};

struct SolveStep {
    std::size_t node;
    std::string rule; // extension shape that resolved the node
    std::string detail;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Solved;
    SixTermSequence sequence;
    std::vector<SolveStep> steps;
    std::vector<UnresolvedNode> unresolved;
    // Violated site when known data is inconsistent.
    std::optional<NodeExactness> contradiction;
};

// Fills unknown nodes bracketed by known data: an unknown X with known map e
// into its predecessor and known map h out of its successor sits in
// 0 -> coker(e) -> X -> ker(h) -> 0, resolved through solve_extension. The
// two adjacent unknown maps are reconstructed alongside. Idempotent on its
// own output; ambiguity is reported, never guessed.
SolveResult solve_six_term(const SixTermSequence& seq);

} // namespace kbg
