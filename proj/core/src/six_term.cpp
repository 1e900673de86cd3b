#include "kbg/six_term.hpp"

#include "kbg/smith.hpp"

#include <sstream>

namespace kbg {

namespace {

std::size_t prev_of(std::size_t i) { return (i + SixTermSequence::kNodes - 1) % SixTermSequence::kNodes; }
std::size_t next_of(std::size_t i) { return (i + 1) % SixTermSequence::kNodes; }

std::string node_ref(std::size_t i) {
    return SixTermSequence::node_names()[i];
}

std::string map_ref(std::size_t i) {
    return node_ref(i) + " -> " + node_ref(next_of(i));
}

} // namespace

SixTermSequence::SixTermSequence() = default;

const std::array<std::string, SixTermSequence::kNodes>& SixTermSequence::node_names() {
    static const std::array<std::string, kNodes> names = {
        "K0(ideal)", "K0(algebra)", "K0(quotient)",
        "K1(ideal)", "K1(algebra)", "K1(quotient)"};
    return names;
}

void SixTermSequence::set_node(std::size_t i, AbelianGroup g) {
    nodes_.at(i) = std::move(g);
}

void SixTermSequence::clear_node(std::size_t i) {
    nodes_.at(i).reset();
    maps_.at(i).reset();
    maps_.at(prev_of(i)).reset();
}

void SixTermSequence::set_map(std::size_t i, Homomorphism h) {
    maps_.at(i) = std::move(h);
}

bool SixTermSequence::fully_known() const {
    for (std::size_t i = 0; i < kNodes; ++i)
        if (!nodes_[i] || !maps_[i]) return false;
    return true;
}

std::vector<std::string> SixTermSequence::structural_errors() const {
    std::vector<std::string> errs;
    for (std::size_t i = 0; i < kNodes; ++i) {
        if (!maps_[i]) continue;
        const Homomorphism& h = *maps_[i];
        if (!nodes_[i])
            errs.push_back("map " + map_ref(i) + " is set but its source node is unknown");
        else if (!(h.domain() == *nodes_[i]))
            errs.push_back("map " + map_ref(i) + " has domain " + h.domain().str() +
                           " but the node holds " + nodes_[i]->str());
        if (!nodes_[next_of(i)])
            errs.push_back("map " + map_ref(i) + " is set but its target node is unknown");
        else if (!(h.codomain() == *nodes_[next_of(i)]))
            errs.push_back("map " + map_ref(i) + " has codomain " + h.codomain().str() +
                           " but the node holds " + nodes_[next_of(i)]->str());
    }
    return errs;
}

bool ExactnessReport::all_exact() const {
    if (!structural.empty()) return false;
    for (const NodeExactness& n : nodes)
        if (n.verdict != NodeVerdict::Exact) return false;
    return true;
}

ExactnessReport check_exactness(const SixTermSequence& seq) {
    ExactnessReport report;
    report.structural = seq.structural_errors();
    for (std::size_t i = 0; i < SixTermSequence::kNodes; ++i) {
        if (!seq.node(i)) report.structural.push_back("node " + node_ref(i) + " is unknown");
        if (!seq.map(i)) report.structural.push_back("map " + map_ref(i) + " is unknown");
    }
    if (!report.structural.empty()) return report;

    for (std::size_t i = 0; i < SixTermSequence::kNodes; ++i) {
        const Homomorphism& incoming = *seq.map(prev_of(i));
        const Homomorphism& outgoing = *seq.map(i);
        // Exactness at node i compares two sublattices of the node's
        // generator cover: the image of the incoming map and the kernel of
        // the outgoing one (both include the node's relations).
        IntMatrix im = image_lattice(incoming);
        IntMatrix ker = kernel_lattice(outgoing);

        std::optional<IntVec> bad_image;
        for (std::size_t j = 0; j < im.cols() && !bad_image; ++j) {
            IntVec x(im.rows());
            for (std::size_t r = 0; r < im.rows(); ++r) x[r] = im(r, j);
            if (!lattice_contains(ker, x)) bad_image = seq.node(i)->reduce(x);
        }
        if (bad_image) {
            report.nodes.push_back({i, NodeVerdict::ImageNotContained, bad_image,
                                    "image generator of " + map_ref(prev_of(i)) +
                                        " is not annihilated by " + map_ref(i)});
            continue;
        }
        std::optional<IntVec> missing;
        for (std::size_t j = 0; j < ker.cols() && !missing; ++j) {
            IntVec x(ker.rows());
            for (std::size_t r = 0; r < ker.rows(); ++r) x[r] = ker(r, j);
            if (!lattice_contains(im, x)) missing = seq.node(i)->reduce(x);
        }
        if (missing) {
            report.nodes.push_back({i, NodeVerdict::ImageStrictlySmaller, missing,
                                    "kernel generator of " + map_ref(i) + " is not hit by " +
                                        map_ref(prev_of(i))});
        } else {
            report.nodes.push_back({i, NodeVerdict::Exact, std::nullopt, ""});
        }
    }
    return report;
}

SolveResult solve_six_term(const SixTermSequence& seq) {
    SolveResult result;
    result.sequence = seq;
    SixTermSequence& s = result.sequence;

    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < SixTermSequence::kNodes; ++i) {
            if (s.node(i)) continue;
            const std::size_t p = prev_of(i), n = next_of(i);
            // Need the map landing in the predecessor and the map leaving
            // the successor, plus both neighbour nodes.
            if (!s.node(p) || !s.node(n) || !s.map(prev_of(p)) || !s.map(n)) continue;

            CokernelResult sub = hom_cokernel(*s.map(prev_of(p)));
            KernelResult quot = hom_kernel(*s.map(n));
            ExtensionResult ext = solve_extension(sub.group, quot.group);
            if (std::holds_alternative<AmbiguousExtension>(ext)) continue;

            DirectSumResult sum = direct_sum_with_maps(sub.group, quot.group);
            s.set_node(i, sum.group);
            s.set_map(p, compose(sum.include_left, sub.projection));
            s.set_map(i, compose(quot.inclusion, sum.project_right));

            std::ostringstream detail;
            detail << node_ref(i) << " = extension of " << quot.group.str() << " by "
                   << sub.group.str() << " = " << sum.group.str();
            std::string rule;
            if (sub.group.is_trivial())
                rule = "trivial subobject";
            else if (quot.group.is_trivial())
                rule = "trivial quotient";
            else if (quot.group.is_free())
                rule = "free quotient splits";
            else
                rule = "coprime finite orders split";
            result.steps.push_back({i, rule, detail.str()});
            progress = true;
        }
    }

    for (std::size_t i = 0; i < SixTermSequence::kNodes; ++i) {
        if (s.node(i)) continue;
        const std::size_t p = prev_of(i), n = next_of(i);
        if (s.node(p) && s.node(n) && s.map(prev_of(p)) && s.map(n)) {
            CokernelResult sub = hom_cokernel(*s.map(prev_of(p)));
            KernelResult quot = hom_kernel(*s.map(n));
            ExtensionResult ext = solve_extension(sub.group, quot.group);
            result.unresolved.push_back(
                {i, BlockReason::AmbiguousExtension, std::get<AmbiguousExtension>(ext),
                 "node " + node_ref(i) + " blocked by an ambiguous extension"});
        } else {
            result.unresolved.push_back(
                {i, BlockReason::MissingAdjacentData, std::nullopt,
                 "node " + node_ref(i) +
                     " lacks the connecting data needed to bracket it"});
        }
    }

    if (!result.unresolved.empty()) {
        result.status = SolveStatus::Partial;
        return result;
    }

    if (s.fully_known()) {
        ExactnessReport exact = check_exactness(s);
        for (const NodeExactness& n : exact.nodes)
            if (n.verdict != NodeVerdict::Exact) {
                result.status = SolveStatus::Contradiction;
                result.contradiction = n;
                return result;
            }
    }
    result.status = SolveStatus::Solved;
    return result;
}

} // namespace kbg
