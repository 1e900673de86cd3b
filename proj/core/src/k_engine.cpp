#include "kbg/k_engine.hpp"

#include <sstream>

namespace kbg {

namespace {

std::string group_pair(const AbelianGroup& k0, const AbelianGroup& k1) {
    return "K0 = " + k0.str() + ", K1 = " + k1.str();
}

LevelContext make_context(const GroupoidDescriptor& d, std::size_t level, MapSlot slot,
                          const AbelianGroup& source, const AbelianGroup& target) {
    LevelContext ctx;
    ctx.slot = slot;
    ctx.level = level;
    ctx.depth = static_cast<std::size_t>(d.depth());
    ctx.strongly_central = d.strongly_central;
    ctx.case_tag = d.case_tag;
    ctx.ideal = d.strata[level];
    ctx.quotient.assign(d.strata.begin() + static_cast<std::ptrdiff_t>(level) + 1,
                        d.strata.end());
    ctx.source = source;
    ctx.target = target;
    return ctx;
}

// Fills one connecting-map slot from the rule base; returns false (and the
// PartialSolution) when no rule covers the context.
bool fill_slot(SixTermSequence& seq, const LevelContext& ctx, std::size_t map_index,
               std::vector<TraceStep>& trace, PartialSolution& blocked) {
    const std::string arrow = ctx.slot == MapSlot::Exponential
                                  ? "K0(quotient) -> K1(ideal)"
                                  : "K1(quotient) -> K0(ideal)";
    RuleOutcome out = connecting_map_rule(ctx);
    if (const auto* forced = std::get_if<ForcedZero>(&out)) {
        seq.set_map(map_index, Homomorphism::zero(ctx.source, ctx.target));
        trace.push_back({ctx.level, "rule",
                         to_string(ctx.slot) + " map " + arrow + " = 0: " + forced->rule +
                             " [" + forced->citation + "]"});
        return true;
    }
    if (const auto* applied = std::get_if<AppliedRule>(&out)) {
        seq.set_map(map_index, applied->map);
        trace.push_back({ctx.level, "rule",
                         to_string(ctx.slot) + " map " + arrow + " = " +
                             applied->map.matrix().str() + ": " + applied->rule + " [" +
                             applied->citation + "]"});
        return true;
    }
    const auto& unknown = std::get<UnknownRule>(out);
    blocked.level = ctx.level;
    blocked.slot = to_string(ctx.slot);
    blocked.reason = "no connecting-map rule matches";
    blocked.detail = "nearest rule \"" + unknown.nearest_rule + "\" [" + unknown.citation +
                     "] fails at: " + unknown.unmet;
    blocked.trace = trace;
    return false;
}

} // namespace

std::string to_string(const GeneratorOrigin& o) {
    std::ostringstream os;
    if (o.kind == GeneratorOrigin::Kind::Fredholm)
        os << "fredholm(stratum " << o.stratum << ", " << o.components
           << (o.components == 1 ? " component)" : " components)");
    else
        os << "symbol(stratum " << o.stratum << ")";
    return os.str();
}

std::string trace_to_text(const std::vector<TraceStep>& trace) {
    std::ostringstream os;
    for (const TraceStep& s : trace)
        os << "level " << s.level << " [" << s.kind << "] " << s.text << "\n";
    return os.str();
}

ComputeOutcome compute_k(const GroupoidDescriptor& d) {
    ValidationReport report = validate_descriptor(d);
    if (!report.valid())
        throw InvalidDescriptorError("cannot compute K-theory of an invalid descriptor: " +
                                     report.violations.front().message);

    const std::size_t r = d.strata.size() - 1;
    std::vector<TraceStep> trace;

    StratumKGroups cur = stratum_k_groups(d.strata[r], r);
    std::vector<GeneratorOrigin> provenance;
    if (r == 0) {
        for (std::size_t g = 0; g < cur.k0.generator_count(); ++g)
            provenance.push_back({GeneratorOrigin::Kind::Fredholm, 0, d.strata[0].components});
    } else {
        for (std::size_t g = 0; g < cur.k0.generator_count(); ++g)
            provenance.push_back({GeneratorOrigin::Kind::Symbol, r, d.strata[r].components});
    }
    trace.push_back({r, "seed",
                     "deepest stratum (isotropy dimension " +
                         std::to_string(d.strata[r].isotropy_dim) +
                         "): " + group_pair(cur.k0, cur.k1)});

    std::vector<SixTermSequence> sequences(r);

    for (std::size_t back = 0; back < r; ++back) {
        const std::size_t level = r - 1 - back;
        StratumKGroups ideal = stratum_k_groups(d.strata[level], level);

        SixTermSequence seq;
        seq.set_node(0, ideal.k0);
        seq.set_node(2, cur.k0);
        seq.set_node(3, ideal.k1);
        seq.set_node(5, cur.k1);

        PartialSolution blocked;
        LevelContext exp_ctx =
            make_context(d, level, MapSlot::Exponential, cur.k0, ideal.k1);
        if (!fill_slot(seq, exp_ctx, SixTermSequence::kExpMap, trace, blocked))
            return blocked;
        LevelContext ind_ctx = make_context(d, level, MapSlot::Index, cur.k1, ideal.k0);
        if (!fill_slot(seq, ind_ctx, SixTermSequence::kIndexMap, trace, blocked))
            return blocked;

        SolveResult solved = solve_six_term(seq);
        if (solved.status == SolveStatus::Partial) {
            const UnresolvedNode& u = solved.unresolved.front();
            PartialSolution partial;
            partial.level = level;
            partial.slot = SixTermSequence::node_names()[u.node];
            partial.reason = u.reason == BlockReason::AmbiguousExtension
                                 ? "ambiguous extension"
                                 : "missing adjacent data";
            partial.detail = u.detail;
            if (u.ambiguity)
                partial.detail += " (0 -> " + u.ambiguity->sub.str() + " -> X -> " +
                                  u.ambiguity->quot.str() + " -> 0: " + u.ambiguity->reason +
                                  ")";
            partial.trace = trace;
            return partial;
        }
        if (solved.status == SolveStatus::Contradiction)
            throw std::logic_error(
                "rule base produced an inconsistent sequence at level " +
                std::to_string(level) + ": " +
                (solved.contradiction ? solved.contradiction->detail
                                      : std::string("unknown site")));
        for (const SolveStep& s : solved.steps)
            trace.push_back({level, "solve",
                             SixTermSequence::node_names()[s.node] + " = " +
                                 solved.sequence.node(s.node)->str() + " via " + s.rule +
                                 (s.detail.empty() ? "" : " (" + s.detail + ")")});

        ExactnessReport exact = check_exactness(solved.sequence);
        if (!exact.all_exact())
            throw std::logic_error("solved sequence fails exactness at level " +
                                   std::to_string(level));
        trace.push_back({level, "exactness", "solved sequence is exact at all six nodes"});

        // Fredholm summand: cokernel of the index map inside K0(algebra).
        CokernelResult sub = hom_cokernel(*solved.sequence.map(SixTermSequence::kIndexMap));
        std::vector<GeneratorOrigin> next;
        for (std::size_t g = 0; g < sub.group.generator_count(); ++g)
            next.push_back(
                {GeneratorOrigin::Kind::Fredholm, level, d.strata[level].components});
        if (solved.sequence.map(SixTermSequence::kExpMap)->is_zero()) {
            // Full symbol summand: quotient generators land unchanged.
            next.insert(next.end(), provenance.begin(), provenance.end());
        } else {
            KernelResult ker =
                hom_kernel(*solved.sequence.map(SixTermSequence::kExpMap));
            for (std::size_t g = 0; g < ker.group.generator_count(); ++g)
                next.push_back({GeneratorOrigin::Kind::Symbol, level + 1,
                                d.strata[level + 1].components});
        }
        provenance = std::move(next);

        cur.k0 = *solved.sequence.node(1);
        cur.k1 = *solved.sequence.node(4);
        sequences[level] = solved.sequence;

        if (d.case_tag == CaseTag::PartitionedHypersurface && level == 0)
            trace.push_back(
                {level, "note",
                 "the stated images ι(1⊕0) = 0, ι(0⊕1) = -1 at Eq "
                 "(AntiInd) contradict the quotient by ∂(1) = 1 ⊕ 1; the "
                 "inclusion is computed as the cokernel map (a, b) -> a - b instead"});
    }

    if (provenance.size() != cur.k0.generator_count())
        throw std::logic_error("provenance does not cover K0 generators exactly once");

    KResult result;
    result.k0 = cur.k0;
    result.k1 = cur.k1;
    result.provenance = std::move(provenance);
    result.trace = std::move(trace);
    result.sequences = std::move(sequences);
    return result;
}

Homomorphism fredholm_inclusion(const GroupoidDescriptor& d, const KResult& res) {
    if (d.depth() != 1)
        throw UnsupportedCaseError(
            "the inclusion of Fredholm classes is computed only at depth one, got depth " +
            std::to_string(d.depth()));
    const SixTermSequence& seq = res.sequences.at(0);

    CokernelResult sub = hom_cokernel(*seq.map(SixTermSequence::kIndexMap));
    KernelResult ker = hom_kernel(*seq.map(SixTermSequence::kExpMap));
    DirectSumResult ds = direct_sum_with_maps(sub.group, ker.group);
    if (!(ds.group == res.k0))
        throw std::logic_error("summand reconstruction disagrees with the solved K0");

    Homomorphism raw = compose(ds.include_left, sub.projection);

    // Only the relative sign is meaningful; pin the first listed component.
    IntMatrix m = raw.matrix();
    for (std::size_t i = 0; i < m.rows() * m.cols(); ++i) {
        const Int& e = m(i / m.cols(), i % m.cols());
        if (e == 0) continue;
        if (e < 0) m = m.negated();
        break;
    }
    return Homomorphism(raw.domain(), raw.codomain(), m);
}

} // namespace kbg
