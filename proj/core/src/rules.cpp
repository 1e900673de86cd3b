#include "kbg/rules.hpp"

#include <stdexcept>

namespace kbg {

namespace {

bool single_stratum_quotient(const LevelContext& ctx) { return ctx.quotient.size() == 1; }

int quotient_isotropy(const LevelContext& ctx) { return ctx.quotient.front().isotropy_dim; }

bool nontrivial_endpoints(const LevelContext& ctx) {
    return !ctx.source.is_trivial() && !ctx.target.is_trivial();
}

bool all_connected(const LevelContext& ctx) {
    if (ctx.ideal.components != 1) return false;
    for (const StratumDescriptor& s : ctx.quotient)
        if (s.components != 1) return false;
    return true;
}

bool all_exponential(const LevelContext& ctx) {
    if (ctx.ideal.isotropy_dim > 0 && !ctx.ideal.isotropy_exponential) return false;
    for (const StratumDescriptor& s : ctx.quotient)
        if (s.isotropy_dim > 0 && !s.isotropy_exponential) return false;
    return true;
}

std::vector<ConnectingRule> build_rule_base() {
    std::vector<ConnectingRule> rules;

    // Structural vanishing: nothing to choose when either endpoint is the
    // zero group. This is the only rule consulting the groups alone.
    rules.push_back({
        "vanishing against a trivial group",
        "(Comp3)/(Comp4): connecting map against a trivial group",
        {
            {"trivial source or target",
             [](const LevelContext& c) {
                 return c.source.is_trivial() || c.target.is_trivial();
             }},
        },
        RuleAction::ForceZero,
        nullptr,
    });

    // Depth one, odd isotropy dimension > 1: the index map vanishes and the
    // K-theoretic index agrees with the Fredholm index.
    rules.push_back({
        "odd isotropy index vanishing",
        "Theorem OddMain / Eq (OddIsom): the index map vanishes for odd "
        "isotropy dimension > 1",
        {
            {"index slot", [](const LevelContext& c) { return c.slot == MapSlot::Index; }},
            {"pair groupoid ideal",
             [](const LevelContext& c) { return c.ideal.isotropy_dim == 0; }},
            {"single-stratum quotient", single_stratum_quotient},
            {"odd quotient isotropy exceeding one",
             [](const LevelContext& c) {
                 return single_stratum_quotient(c) && quotient_isotropy(c) > 1 &&
                        quotient_isotropy(c) % 2 == 1;
             }},
            {"exponential isotropy", all_exponential},
            {"connected strata", all_connected},
            {"nontrivial endpoints", nontrivial_endpoints},
        },
        RuleAction::ForceZero,
        nullptr,
    });

    // Codimension-one connected boundary: the index map sends the symbol
    // generator to the rank-one projection class.
    rules.push_back({
        "connected boundary incidence",
        "Eq (Incidence): ∂(1) = 1",
        {
            {"index slot", [](const LevelContext& c) { return c.slot == MapSlot::Index; }},
            {"boundary case",
             [](const LevelContext& c) { return c.case_tag == CaseTag::ManifoldWithBoundary; }},
            {"pair groupoid ideal",
             [](const LevelContext& c) { return c.ideal.isotropy_dim == 0; }},
            {"single-stratum quotient", single_stratum_quotient},
            {"one-dimensional quotient isotropy",
             [](const LevelContext& c) {
                 return single_stratum_quotient(c) && quotient_isotropy(c) == 1;
             }},
            {"connected strata", all_connected},
            {"nontrivial endpoints", nontrivial_endpoints},
        },
        RuleAction::Matrix,
        [](const LevelContext&) {
            IntMatrix m(1, 1);
            m(0, 0) = 1;
            return m;
        },
    });

    // Codimension-one hypersurface with two interior sides: the symbol
    // generator maps to the diagonal class, one projection per side.
    rules.push_back({
        "partitioned hypersurface incidence",
        "§6.2: ∂(1) = 1 ⊕ 1",
        {
            {"index slot", [](const LevelContext& c) { return c.slot == MapSlot::Index; }},
            {"partitioned case",
             [](const LevelContext& c) {
                 return c.case_tag == CaseTag::PartitionedHypersurface;
             }},
            {"pair groupoid ideal",
             [](const LevelContext& c) { return c.ideal.isotropy_dim == 0; }},
            {"two interior components",
             [](const LevelContext& c) { return c.ideal.components == 2; }},
            {"single-stratum quotient", single_stratum_quotient},
            {"one-dimensional quotient isotropy",
             [](const LevelContext& c) {
                 return single_stratum_quotient(c) && quotient_isotropy(c) == 1;
             }},
            {"connected hypersurface",
             [](const LevelContext& c) {
                 return single_stratum_quotient(c) && c.quotient.front().components == 1;
             }},
            {"nontrivial endpoints", nontrivial_endpoints},
        },
        RuleAction::Matrix,
        [](const LevelContext& c) {
            IntMatrix m(static_cast<std::size_t>(c.ideal.components), 1);
            for (std::size_t i = 0; i < m.rows(); ++i) m(i, 0) = 1;
            return m;
        },
    });

    auto odd_increments_depth_two = [](const LevelContext& c) {
        // The two isotropy increments of the tower, both odd and > 1.
        if (c.level + c.quotient.size() != 2) return false;
        int q1, inc2;
        if (c.level == 1) {
            q1 = c.ideal.isotropy_dim;
            inc2 = c.quotient.front().isotropy_dim - q1;
        } else {
            if (c.quotient.size() != 2) return false;
            q1 = c.quotient[0].isotropy_dim;
            inc2 = c.quotient[1].isotropy_dim - q1;
        }
        return q1 > 1 && q1 % 2 == 1 && inc2 > 1 && inc2 % 2 == 1;
    };

    // Two-level tower with both isotropy increments odd: at the inner level
    // the exponential slot is the inner groupoid's index map seen through
    // the central splitting, and it vanishes.
    rules.push_back({
        "iterated odd tower, inner level",
        "Theorem OddMain through the central splitting: the inner index map "
        "vanishes (Eq (OddIsom))",
        {
            {"exponential slot",
             [](const LevelContext& c) { return c.slot == MapSlot::Exponential; }},
            {"strongly central", [](const LevelContext& c) { return c.strongly_central; }},
            {"depth two", [](const LevelContext& c) { return c.depth == 2; }},
            {"inner level", [](const LevelContext& c) { return c.level == 1; }},
            {"single-stratum quotient", single_stratum_quotient},
            {"odd isotropy increments", odd_increments_depth_two},
            {"exponential isotropy", all_exponential},
            {"connected strata", all_connected},
            {"nontrivial endpoints", nontrivial_endpoints},
        },
        RuleAction::ForceZero,
        nullptr,
    });

    // Same tower, outer level: the boundary map out of the solved two-stratum
    // quotient vanishes.
    rules.push_back({
        "iterated odd tower, outer level",
        "Eq (CD8.1): the boundary map vanishes in the two-level odd tower",
        {
            {"index slot", [](const LevelContext& c) { return c.slot == MapSlot::Index; }},
            {"strongly central", [](const LevelContext& c) { return c.strongly_central; }},
            {"depth two", [](const LevelContext& c) { return c.depth == 2; }},
            {"outer level", [](const LevelContext& c) { return c.level == 0; }},
            {"pair groupoid ideal",
             [](const LevelContext& c) { return c.ideal.isotropy_dim == 0; }},
            {"two-stratum quotient",
             [](const LevelContext& c) { return c.quotient.size() == 2; }},
            {"odd isotropy increments", odd_increments_depth_two},
            {"exponential isotropy", all_exponential},
            {"connected strata", all_connected},
            {"nontrivial endpoints", nontrivial_endpoints},
        },
        RuleAction::ForceZero,
        nullptr,
    });

    return rules;
}

} // namespace

std::string to_string(MapSlot s) {
    return s == MapSlot::Exponential ? "exponential" : "index";
}

bool ConnectingRule::matches(const LevelContext& ctx) const {
    for (const RuleCondition& c : conditions)
        if (!c.holds(ctx)) return false;
    return true;
}

const std::vector<ConnectingRule>& connecting_rule_base() {
    static const std::vector<ConnectingRule> base = build_rule_base();
    return base;
}

RuleOutcome connecting_map_rule(const LevelContext& ctx) {
    const std::vector<ConnectingRule>& base = connecting_rule_base();

    const ConnectingRule* fired = nullptr;
    for (const ConnectingRule& rule : base) {
        if (!rule.matches(ctx)) continue;
        if (fired)
            throw std::logic_error("connecting-map rules are not mutually exclusive: \"" +
                                   fired->name + "\" and \"" + rule.name + "\" both match");
        fired = &rule;
    }

    if (fired) {
        if (fired->action == RuleAction::ForceZero)
            return ForcedZero{fired->name, fired->citation};
        return AppliedRule{Homomorphism(ctx.source, ctx.target, fired->matrix(ctx)),
                           fired->name, fired->citation};
    }

    // Report the nearest miss: most satisfied conditions, earliest on ties.
    const ConnectingRule* nearest = nullptr;
    std::size_t best = 0;
    std::string unmet;
    for (const ConnectingRule& rule : base) {
        std::size_t score = 0;
        std::string first_unmet;
        for (const RuleCondition& c : rule.conditions) {
            if (c.holds(ctx))
                ++score;
            else if (first_unmet.empty())
                first_unmet = c.label;
        }
        if (!nearest || score > best) {
            nearest = &rule;
            best = score;
            unmet = first_unmet;
        }
    }
    return UnknownRule{nearest->name, nearest->citation, unmet};
}

} // namespace kbg
