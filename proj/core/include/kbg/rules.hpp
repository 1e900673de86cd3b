#pragma once

#include "kbg/descriptor.hpp"
#include "kbg/homomorphism.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace kbg {

enum class MapSlot { Exponential, Index };

std::string to_string(MapSlot s);

// Everything a connecting-map rule is allowed to look at: the level of the
// composition series, the ideal stratum, the strata forming the quotient,
// and the source/target K-groups of the slot under consideration.
struct LevelContext {
    MapSlot slot = MapSlot::Index;
    std::size_t level = 0;
    std::size_t depth = 1;
    bool strongly_central = false;
    CaseTag case_tag = CaseTag::Generic;
    StratumDescriptor ideal;
    std::vector<StratumDescriptor> quotient;
    AbelianGroup source, target;
};

struct RuleCondition {
    std::string label;
    std::function<bool(const LevelContext&)> holds;
};

enum class RuleAction { ForceZero, Matrix };

// One entry of the shipped rule base. A rule fires when every condition
// holds; the conditions across the base are pairwise exclusive.
struct ConnectingRule {
    std::string name;
    std::string citation;
    std::vector<RuleCondition> conditions;
    RuleAction action = RuleAction::ForceZero;
    std::function<IntMatrix(const LevelContext&)> matrix;

    bool matches(const LevelContext& ctx) const;
};

const std::vector<ConnectingRule>& connecting_rule_base();

// A rule fired and produced an actual map.
struct AppliedRule {
    Homomorphism map;
    std::string rule;
    std::string citation;
};

// A rule fired and pinned the map to zero.
struct ForcedZero {
    std::string rule;
    std::string citation;
};

// No rule covers the context. The nearest rule (most conditions satisfied,
// earliest in the base on ties) is reported so the gap is auditable.
struct UnknownRule {
    std::string nearest_rule;
    std::string citation;
    std::string unmet;
};

using RuleOutcome = std::variant<AppliedRule, ForcedZero, UnknownRule>;

// Looks the context up in the rule base. A context matching no rule yields
// UnknownRule, never a default; two simultaneous matches are a logic error.
RuleOutcome connecting_map_rule(const LevelContext& ctx);

} // namespace kbg
