#pragma once

#include "kbg/abelian_group.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace kbg {

enum class TopologyTag { Contractible, Connected, PartitionedBoundary, Other };
enum class CaseTag { Generic, ManifoldWithBoundary, PartitionedHypersurface, Bruhat };

std::string to_string(TopologyTag t);
std::string to_string(CaseTag c);

// One stratum of the singular foliation: the union of its same-dimension
// leaves. Only the data entering the K-computation is kept; in particular
// leaf topology is reduced to a coarse tag and a component count.
struct StratumDescriptor {
    int leaf_dim = 0;
    int isotropy_dim = 0;
    bool isotropy_exponential = true;
    int components = 1;
    TopologyTag topology_tag = TopologyTag::Connected;
    // Order of vanishing of the defining vector fields at the stratum;
    // meaningful for the analytic models, always even when present.
    std::optional<int> degeneracy_order;

    bool operator==(const StratumDescriptor&) const = default;
};

// Stratified groupoid presented by its strata, ordered from the open dense
// leaf (index 0, trivial isotropy) down to the deepest singular stratum.
struct GroupoidDescriptor {
    std::string name;
    bool strongly_central = false;
    CaseTag case_tag = CaseTag::Generic;
    std::vector<StratumDescriptor> strata;

    int depth() const { return static_cast<int>(strata.size()) - 1; }

    bool operator==(const GroupoidDescriptor&) const = default;
};

struct ParseError {
    // JSON pointer-ish path for schema errors, "line L column C" for syntax.
    std::string where;
    std::string message;
};

// All schema problems are collected, not just the first one.
using ParseOutcome = std::variant<GroupoidDescriptor, std::vector<ParseError>>;

ParseOutcome parse_descriptor(const std::string& json_text);
std::string serialize_descriptor(const GroupoidDescriptor& d);

struct Violation {
    std::string clause;
    std::string message;
    std::optional<std::size_t> stratum;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

ValidationReport validate_descriptor(const GroupoidDescriptor& d);

// Levels of the filtration by closed strata: at level i the ideal comes from
// stratum i, the ambient algebra from strata i..r and the quotient from
// strata i+1..r.
struct SeriesLevel {
    std::size_t level;
    std::vector<std::size_t> ideal;
    std::vector<std::size_t> algebra;
    std::vector<std::size_t> quotient;
};

std::vector<SeriesLevel> composition_series(const GroupoidDescriptor& d);

struct InvalidDescriptorError : std::runtime_error {
    explicit InvalidDescriptorError(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedIsotropyError : std::runtime_error {
    std::size_t stratum;
    UnsupportedIsotropyError(std::size_t s, const std::string& what)
        : std::runtime_error(what), stratum(s) {}
};

// K-groups of the stratum's groupoid C*-algebra: per component a copy of
// (Z, 0) shifted to (0, Z) when the isotropy dimension is odd. Requires
// exponential isotropy in positive dimension.
struct StratumKGroups {
    AbelianGroup k0, k1;
};

StratumKGroups stratum_k_groups(const StratumDescriptor& s, std::size_t index);

// Shipped families, usable directly or through --param regeneration.
GroupoidDescriptor make_odd_sphere_point(int isotropy_dim);
GroupoidDescriptor make_manifold_with_boundary();
GroupoidDescriptor make_partitioned_circle();
GroupoidDescriptor make_even_q(int isotropy_dim);
GroupoidDescriptor make_bruhat_cp_n(int n);
GroupoidDescriptor make_central_even(int depth);
GroupoidDescriptor make_r2_odd_odd();

// Regenerates a known family from parameters: n for the flag-variety family,
// q for depth-one isotropy, r for the iterated all-even family. Throws
// InvalidDescriptorError for parameters the descriptor's family cannot take.
GroupoidDescriptor apply_params(const GroupoidDescriptor& d,
                                const std::map<std::string, long>& params);

} // namespace kbg
