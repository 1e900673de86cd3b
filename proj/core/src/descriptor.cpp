#include "kbg/descriptor.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kbg {

namespace {

using nlohmann::json;

const std::map<std::string, TopologyTag> kTopologyNames = {
    {"contractible", TopologyTag::Contractible},
    {"connected", TopologyTag::Connected},
    {"partitioned_boundary", TopologyTag::PartitionedBoundary},
    {"other", TopologyTag::Other},
};

const std::map<std::string, CaseTag> kCaseNames = {
    {"generic", CaseTag::Generic},
    {"manifold_with_boundary", CaseTag::ManifoldWithBoundary},
    {"partitioned_hypersurface", CaseTag::PartitionedHypersurface},
    {"bruhat", CaseTag::Bruhat},
};

std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream os;
    os << "line " << line << " column " << col;
    return os.str();
}

struct FieldReader {
    const json& obj;
    std::string path;
    std::vector<ParseError>& errors;
    std::vector<std::string> known;

    bool has(const std::string& key) { return obj.contains(key); }

    template <typename T>
    std::optional<T> get(const std::string& key, const char* type_name) {
        known.push_back(key);
        if (!obj.contains(key)) {
            errors.push_back({path, "missing required field \"" + key + "\""});
            return std::nullopt;
        }
        const json& v = obj.at(key);
        try {
            return v.get<T>();
        } catch (const json::exception&) {
            errors.push_back({path + "/" + key, std::string("expected ") + type_name});
            return std::nullopt;
        }
    }

    template <typename T>
    std::optional<T> get_optional(const std::string& key, const char* type_name) {
        known.push_back(key);
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        try {
            return v.get<T>();
        } catch (const json::exception&) {
            errors.push_back({path + "/" + key, std::string("expected ") + type_name});
            return std::nullopt;
        }
    }

    void reject_unknown() {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (std::find(known.begin(), known.end(), it.key()) == known.end())
                errors.push_back({path + "/" + it.key(), "unknown field"});
    }
};

// json coerces floats into integer targets; require true integers.
std::optional<long> read_int(FieldReader& r, const std::string& key, bool required) {
    r.known.push_back(key);
    if (!r.obj.contains(key)) {
        if (required) r.errors.push_back({r.path, "missing required field \"" + key + "\""});
        return std::nullopt;
    }
    const json& v = r.obj.at(key);
    if (!v.is_number_integer()) {
        r.errors.push_back({r.path + "/" + key, "expected an integer"});
        return std::nullopt;
    }
    return v.get<long>();
}

} // namespace

std::string to_string(TopologyTag t) {
    for (const auto& [name, tag] : kTopologyNames)
        if (tag == t) return name;
    return "other";
}

std::string to_string(CaseTag c) {
    for (const auto& [name, tag] : kCaseNames)
        if (tag == c) return name;
    return "generic";
}

ParseOutcome parse_descriptor(const std::string& json_text) {
    std::vector<ParseError> errors;
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        errors.push_back({line_column(json_text, e.byte ? e.byte - 1 : 0), e.what()});
        return errors;
    }
    if (!root.is_object()) {
        errors.push_back({"", "top level must be an object"});
        return errors;
    }

    GroupoidDescriptor d;
    FieldReader top{root, "", errors, {}};
    if (auto v = top.get<std::string>("name", "a string")) d.name = *v;
    if (auto v = top.get<bool>("strongly_central", "a boolean")) d.strongly_central = *v;
    if (auto v = top.get<std::string>("case_tag", "a string")) {
        auto it = kCaseNames.find(*v);
        if (it == kCaseNames.end())
            errors.push_back({"/case_tag", "unknown case tag \"" + *v + "\""});
        else
            d.case_tag = it->second;
    }
    top.known.push_back("strata");
    if (!root.contains("strata")) {
        errors.push_back({"", "missing required field \"strata\""});
    } else if (!root.at("strata").is_array()) {
        errors.push_back({"/strata", "expected an array"});
    } else {
        std::size_t idx = 0;
        for (const json& s : root.at("strata")) {
            std::string path = "/strata/" + std::to_string(idx);
            if (!s.is_object()) {
                errors.push_back({path, "expected an object"});
                ++idx;
                continue;
            }
            StratumDescriptor st;
            FieldReader r{s, path, errors, {}};
            if (auto v = read_int(r, "leaf_dim", true)) st.leaf_dim = static_cast<int>(*v);
            if (auto v = read_int(r, "isotropy_dim", true))
                st.isotropy_dim = static_cast<int>(*v);
            if (auto v = r.get<bool>("isotropy_exponential", "a boolean"))
                st.isotropy_exponential = *v;
            if (auto v = read_int(r, "components", true))
                st.components = static_cast<int>(*v);
            if (auto v = r.get<std::string>("topology_tag", "a string")) {
                auto it = kTopologyNames.find(*v);
                if (it == kTopologyNames.end())
                    errors.push_back({path + "/topology_tag", "unknown topology tag \"" + *v + "\""});
                else
                    st.topology_tag = it->second;
            }
            if (auto v = read_int(r, "degeneracy_order", false))
                st.degeneracy_order = static_cast<int>(*v);
            r.reject_unknown();
            d.strata.push_back(st);
            ++idx;
        }
        if (d.strata.empty()) errors.push_back({"/strata", "at least one stratum is required"});
    }
    top.reject_unknown();

    if (!errors.empty()) return errors;
    return d;
}

std::string serialize_descriptor(const GroupoidDescriptor& d) {
    json root;
    root["name"] = d.name;
    root["strongly_central"] = d.strongly_central;
    root["case_tag"] = to_string(d.case_tag);
    root["strata"] = json::array();
    for (const StratumDescriptor& s : d.strata) {
        json j;
        j["leaf_dim"] = s.leaf_dim;
        j["isotropy_dim"] = s.isotropy_dim;
        j["isotropy_exponential"] = s.isotropy_exponential;
        j["components"] = s.components;
        j["topology_tag"] = to_string(s.topology_tag);
        if (s.degeneracy_order) j["degeneracy_order"] = *s.degeneracy_order;
        root["strata"].push_back(j);
    }
    return root.dump(2) + "\n";
}

ValidationReport validate_descriptor(const GroupoidDescriptor& d) {
    ValidationReport report;
    auto add = [&](const std::string& clause, const std::string& msg,
                   std::optional<std::size_t> stratum = std::nullopt) {
        report.violations.push_back({clause, msg, stratum});
    };

    if (d.strata.empty()) {
        add("strata", "descriptor has no strata");
        return report;
    }

    for (std::size_t i = 0; i + 1 < d.strata.size(); ++i)
        if (d.strata[i].leaf_dim <= d.strata[i + 1].leaf_dim)
            add("strictly decreasing leaf dimensions",
                "stratum " + std::to_string(i + 1) + " has leaf dimension " +
                    std::to_string(d.strata[i + 1].leaf_dim) + " >= " +
                    std::to_string(d.strata[i].leaf_dim) + " above it",
                i + 1);

    if (d.strata[0].isotropy_dim != 0)
        add("pair groupoid over the top stratum",
            "stratum 0 must have trivial isotropy, found dimension " +
                std::to_string(d.strata[0].isotropy_dim),
            0);

    for (std::size_t i = 0; i < d.strata.size(); ++i) {
        const StratumDescriptor& s = d.strata[i];
        if (s.leaf_dim < 0)
            add("nonnegative dimensions", "negative leaf dimension", i);
        if (s.isotropy_dim < 0)
            add("nonnegative dimensions", "negative isotropy dimension", i);
        if (s.components < 1)
            add("positive component count",
                "stratum " + std::to_string(i) + " has " + std::to_string(s.components) +
                    " components",
                i);
        // Constant s-fiber dimension over every stratum: the fiber over a
        // deep leaf is (isotropy group) x (leaf), so the two dimensions must
        // add up to the top leaf dimension.
        if (s.leaf_dim + s.isotropy_dim != d.strata[0].leaf_dim)
            add("constant fiber dimension",
                "stratum " + std::to_string(i) + ": leaf " + std::to_string(s.leaf_dim) +
                    " + isotropy " + std::to_string(s.isotropy_dim) +
                    " != top leaf dimension " + std::to_string(d.strata[0].leaf_dim),
                i);
        if (s.degeneracy_order) {
            if (*s.degeneracy_order < 2 || *s.degeneracy_order % 2 != 0)
                add("even degeneracy order",
                    "stratum " + std::to_string(i) + " declares degeneracy order " +
                        std::to_string(*s.degeneracy_order) +
                        "; smooth vanishing forces an even order >= 2",
                    i);
        }
    }

    if (d.strongly_central) {
        // Isotropy dimensions must be cumulative sums of positive per-level
        // group dimensions.
        for (std::size_t i = 0; i + 1 < d.strata.size(); ++i)
            if (d.strata[i + 1].isotropy_dim <= d.strata[i].isotropy_dim)
                add("strongly central increments",
                    "stratum " + std::to_string(i + 1) +
                        ": isotropy dimensions fail to accumulate (" +
                        std::to_string(d.strata[i].isotropy_dim) + " -> " +
                        std::to_string(d.strata[i + 1].isotropy_dim) + ")",
                    i + 1);
    }

    if (d.case_tag == CaseTag::ManifoldWithBoundary) {
        if (d.depth() != 1 || d.strata.size() < 2 || d.strata[1].isotropy_dim != 1 ||
            d.strata[0].components != 1 || d.strata[1].components != 1)
            add("boundary case shape",
                "the boundary case needs depth 1, codimension-one boundary and connected "
                "interior and boundary");
    }
    if (d.case_tag == CaseTag::PartitionedHypersurface) {
        if (d.depth() != 1 || d.strata.size() < 2 || d.strata[1].isotropy_dim != 1 ||
            d.strata[0].components != 2 || d.strata[1].components != 1)
            add("partitioned case shape",
                "the partitioned case needs depth 1, a connected codimension-one "
                "hypersurface and exactly two sides");
    }

    return report;
}

std::vector<SeriesLevel> composition_series(const GroupoidDescriptor& d) {
    ValidationReport v = validate_descriptor(d);
    if (!v.valid())
        throw InvalidDescriptorError("composition series of an invalid descriptor: " +
                                     v.violations.front().message);
    std::vector<SeriesLevel> levels;
    const std::size_t r = d.strata.size() - 1;
    for (std::size_t i = 0; i < r; ++i) {
        SeriesLevel lvl;
        lvl.level = i;
        lvl.ideal = {i};
        for (std::size_t j = i; j <= r; ++j) lvl.algebra.push_back(j);
        for (std::size_t j = i + 1; j <= r; ++j) lvl.quotient.push_back(j);
        levels.push_back(std::move(lvl));
    }
    return levels;
}

StratumKGroups stratum_k_groups(const StratumDescriptor& s, std::size_t index) {
    if (s.isotropy_dim > 0 && !s.isotropy_exponential)
        throw UnsupportedIsotropyError(
            index, "stratum " + std::to_string(index) +
                       " has non-exponential isotropy of dimension " +
                       std::to_string(s.isotropy_dim) +
                       "; only exponential isotropy shifts K-theory by parity");
    AbelianGroup per = AbelianGroup::free_group(static_cast<std::size_t>(s.components));
    if (s.isotropy_dim % 2 == 0) return {per, AbelianGroup::zero()};
    return {AbelianGroup::zero(), per};
}

GroupoidDescriptor make_odd_sphere_point(int isotropy_dim) {
    if (isotropy_dim < 3 || isotropy_dim % 2 == 0)
        throw InvalidDescriptorError("the sphere-with-point family needs odd isotropy >= 3");
    GroupoidDescriptor d;
    d.name = "odd_sphere_point";
    d.strongly_central = true;
    d.case_tag = CaseTag::Generic;
    d.strata = {
        {isotropy_dim, 0, true, 1, TopologyTag::Contractible, std::nullopt},
        {0, isotropy_dim, true, 1, TopologyTag::Contractible, std::nullopt},
    };
    return d;
}

GroupoidDescriptor make_manifold_with_boundary() {
    GroupoidDescriptor d;
    d.name = "manifold_with_boundary";
    d.strongly_central = true;
    d.case_tag = CaseTag::ManifoldWithBoundary;
    d.strata = {
        {2, 0, true, 1, TopologyTag::Connected, std::nullopt},
        {1, 1, true, 1, TopologyTag::Connected, 2},
    };
    return d;
}

GroupoidDescriptor make_partitioned_circle() {
    GroupoidDescriptor d;
    d.name = "partitioned_circle";
    d.strongly_central = true;
    d.case_tag = CaseTag::PartitionedHypersurface;
    d.strata = {
        {2, 0, true, 2, TopologyTag::Other, std::nullopt},
        {1, 1, true, 1, TopologyTag::PartitionedBoundary, 2},
    };
    return d;
}

GroupoidDescriptor make_even_q(int isotropy_dim) {
    if (isotropy_dim < 2 || isotropy_dim % 2 != 0)
        throw InvalidDescriptorError("the even-isotropy family needs even isotropy >= 2");
    GroupoidDescriptor d;
    d.name = "even_q";
    d.strongly_central = true;
    d.case_tag = CaseTag::Generic;
    d.strata = {
        {isotropy_dim + 1, 0, true, 1, TopologyTag::Connected, std::nullopt},
        {1, isotropy_dim, true, 1, TopologyTag::Connected, std::nullopt},
    };
    return d;
}

GroupoidDescriptor make_bruhat_cp_n(int n) {
    if (n < 1) throw InvalidDescriptorError("the flag-variety family needs n >= 1");
    GroupoidDescriptor d;
    d.name = "bruhat_cp_n";
    d.strongly_central = true;
    d.case_tag = CaseTag::Bruhat;
    for (int k = 0; k <= n; ++k)
        d.strata.push_back(
            {2 * (n - k), 2 * k, true, 1, TopologyTag::Contractible, std::nullopt});
    return d;
}

GroupoidDescriptor make_central_even(int depth) {
    if (depth < 1) throw InvalidDescriptorError("the iterated even family needs depth >= 1");
    GroupoidDescriptor d;
    d.name = "central_even_r" + std::to_string(depth);
    d.strongly_central = true;
    d.case_tag = CaseTag::Generic;
    for (int k = 0; k <= depth; ++k)
        d.strata.push_back(
            {2 * (depth - k), 2 * k, true, 1, TopologyTag::Connected, std::nullopt});
    return d;
}

GroupoidDescriptor make_r2_odd_odd() {
    GroupoidDescriptor d;
    d.name = "r2_odd_odd";
    d.strongly_central = true;
    d.case_tag = CaseTag::Generic;
    d.strata = {
        {7, 0, true, 1, TopologyTag::Connected, std::nullopt},
        {4, 3, true, 1, TopologyTag::Connected, std::nullopt},
        {1, 6, true, 1, TopologyTag::Connected, std::nullopt},
    };
    return d;
}

GroupoidDescriptor apply_params(const GroupoidDescriptor& d,
                                const std::map<std::string, long>& params) {
    if (params.empty()) return d;
    GroupoidDescriptor out = d;
    for (const auto& [key, value] : params) {
        if (key == "n") {
            if (out.case_tag != CaseTag::Bruhat)
                throw InvalidDescriptorError(
                    "parameter n only regenerates the flag-variety family");
            std::string name = out.name;
            out = make_bruhat_cp_n(static_cast<int>(value));
            out.name = name;
        } else if (key == "q") {
            if (out.depth() != 1)
                throw InvalidDescriptorError(
                    "parameter q only regenerates depth-one descriptors");
            if (value < 1) throw InvalidDescriptorError("q must be positive");
            int leaf1 = out.strata[1].leaf_dim;
            out.strata[1].isotropy_dim = static_cast<int>(value);
            out.strata[0].leaf_dim = leaf1 + static_cast<int>(value);
        } else if (key == "r") {
            if (!(out.case_tag == CaseTag::Generic && out.strongly_central))
                throw InvalidDescriptorError(
                    "parameter r only regenerates the iterated even family");
            std::string name = out.name;
            out = make_central_even(static_cast<int>(value));
            out.name = name;
        } else {
            throw InvalidDescriptorError("unknown parameter \"" + key + "\"");
        }
    }
    return out;
}

} // namespace kbg
