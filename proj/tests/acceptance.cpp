// Acceptance gate: one check per shipped claim, one line per check. Every
// value here is either an exact integer statement or carries its stated
// tolerance; a failure exits nonzero and names what broke.

#include "kbg/descriptor.hpp"
#include "kbg/heat.hpp"
#include "kbg/k_engine.hpp"
#include "kbg/partitioned_index.hpp"
#include "kbg/simplicial.hpp"
#include "kbg/smith.hpp"
#include "kbg/sphere_parity.hpp"
#include "kbg/toeplitz.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace kbg;

namespace {

struct Failure : std::runtime_error {
    explicit Failure(const std::string& what) : std::runtime_error(what) {}
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

std::string data_path(const std::string& name) {
    return std::string(KBG_DATA_DIR) + "/" + name;
}

KResult solved(const GroupoidDescriptor& d) {
    ComputeOutcome outcome = compute_k(d);
    const KResult* res = std::get_if<KResult>(&outcome);
    require(res != nullptr, d.name + ": expected a full solution");
    return *res;
}

void expect_groups(const GroupoidDescriptor& d, const AbelianGroup& k0, const AbelianGroup& k1) {
    KResult res = solved(d);
    require(res.k0 == k0 && res.k1 == k1, d.name + ": got (" + res.k0.str() + ", " +
                                              res.k1.str() + "), expected (" + k0.str() + ", " +
                                              k1.str() + ")");
}

std::vector<GroupoidDescriptor> golden_descriptors() {
    std::vector<GroupoidDescriptor> out;
    for (int q : {3, 5, 7}) out.push_back(make_odd_sphere_point(q));
    out.push_back(make_manifold_with_boundary());
    out.push_back(make_partitioned_circle());
    for (int q : {2, 4}) out.push_back(make_even_q(q));
    for (int r = 1; r <= 6; ++r) out.push_back(make_central_even(r));
    for (int n = 1; n <= 4; ++n) out.push_back(make_bruhat_cp_n(n));
    out.push_back(make_r2_odd_odd());
    return out;
}

ParityField::Sample random_polynomial(std::mt19937& rng, int q) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, q - 1);
    std::uniform_int_distribution<int> total(0, 6);
    struct Term {
        double c;
        std::vector<int> powers;
    };
    auto terms = std::make_shared<std::vector<Term>>();
    for (int t = 0; t < 10; ++t) {
        Term term{coeff(rng), std::vector<int>(static_cast<std::size_t>(q), 0)};
        int d = total(rng);
        for (int k = 0; k < d; ++k) ++term.powers[static_cast<std::size_t>(pick(rng))];
        terms->push_back(std::move(term));
    }
    return [terms](const std::vector<double>& x) {
        double sum = 0.0;
        for (const auto& term : *terms) {
            double v = term.c;
            for (std::size_t i = 0; i < x.size(); ++i)
                for (int p = 0; p < term.powers[i]; ++p) v *= x[i];
            sum += v;
        }
        return sum;
    };
}

void golden_k_groups() {
    const AbelianGroup zero = AbelianGroup::free_group(0);
    const AbelianGroup z = AbelianGroup::free_group(1);
    for (int q : {3, 5, 7}) expect_groups(make_odd_sphere_point(q), z, z);
    expect_groups(make_manifold_with_boundary(), zero, zero);
    expect_groups(make_partitioned_circle(), z, zero);
    for (int q : {2, 4}) expect_groups(make_even_q(q), AbelianGroup::free_group(2), zero);
    for (int r = 1; r <= 6; ++r)
        expect_groups(make_central_even(r), AbelianGroup::free_group(static_cast<std::size_t>(r) + 1),
                      zero);
    for (int n = 1; n <= 4; ++n)
        expect_groups(make_bruhat_cp_n(n), AbelianGroup::free_group(static_cast<std::size_t>(n) + 1),
                      zero);
    expect_groups(make_r2_odd_odd(), AbelianGroup::free_group(2), z);
}

void fredholm_inclusion_forms() {
    IntMatrix one(1, 1);
    one(0, 0) = 1;
    for (int q : {3, 5, 7}) {
        GroupoidDescriptor d = make_odd_sphere_point(q);
        Homomorphism inc = fredholm_inclusion(d, solved(d));
        require(inc.matrix() == one, d.name + ": inclusion is not the isomorphism [1]");
    }

    GroupoidDescriptor mwb = make_manifold_with_boundary();
    Homomorphism zero_inc = fredholm_inclusion(mwb, solved(mwb));
    require(zero_inc.is_zero(), "manifold_with_boundary: inclusion is not the zero map");
    require(zero_inc.codomain().is_trivial(),
            "manifold_with_boundary: inclusion lands in a nontrivial group");

    IntMatrix diff(1, 2);
    diff(0, 0) = 1;
    diff(0, 1) = -1;
    GroupoidDescriptor part = make_partitioned_circle();
    Homomorphism pairing = fredholm_inclusion(part, solved(part));
    require(pairing.matrix() == diff,
            "partitioned_circle: inclusion matrix is not (a, b) -> a - b");
}

void exactness_and_smith() {
    for (const GroupoidDescriptor& d : golden_descriptors()) {
        KResult res = solved(d);
        for (std::size_t i = 0; i < res.sequences.size(); ++i) {
            ExactnessReport report = check_exactness(res.sequences[i]);
            require(report.all_exact(),
                    d.name + ": sequence at level " + std::to_string(i) + " is not exact");
        }
    }

    std::mt19937 rng(20240818);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 500; ++trial) {
        IntMatrix a(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
        SmithResult smith = smith_normal_form(a);
        std::string tag = "smith trial " + std::to_string(trial);
        require(smith.s == smith.u * a * smith.v, tag + ": S != UAV");
        Int du = smith.u.determinant();
        Int dv = smith.v.determinant();
        require(du * du == 1 && dv * dv == 1, tag + ": U or V is not unimodular");
        require(smith.u * smith.u_inv == IntMatrix::identity(a.rows()), tag + ": U inverse");
        require(smith.v * smith.v_inv == IntMatrix::identity(a.cols()), tag + ": V inverse");
        for (std::size_t i = 0; i + 1 < std::min(a.rows(), a.cols()); ++i) {
            require(smith.diag(i) >= 0, tag + ": negative diagonal");
            if (smith.diag(i) != 0)
                require(smith.diag(i + 1) % smith.diag(i) == 0, tag + ": divisor chain broken");
            else
                require(smith.diag(i + 1) == 0, tag + ": zero before nonzero on the diagonal");
        }
    }
}

void toeplitz_oracle() {
    for (int k = -5; k <= 5; ++k) {
        ToeplitzSymbol sym = ToeplitzSymbol::power(k);
        int index = toeplitz_index(sym, 64);
        int winding = winding_number(sym);
        require(index == -k, "z^" + std::to_string(k) + ": index " + std::to_string(index) +
                                 " != " + std::to_string(-k));
        require(index == -winding,
                "z^" + std::to_string(k) + ": index disagrees with the winding number");
    }
}

void mckean_singer_oracle() {
    const std::vector<double> times{0.1, 1.0, 10.0};
    const std::vector<std::pair<std::string, long>> cases{
        {"octahedron.cplx", 2}, {"torus_7x7.cplx", 0}, {"point.cplx", 1}};
    for (const auto& [file, expected] : cases) {
        McKeanSingerResult res =
            mckean_singer_index(hodge_even_odd_operator(load_complex(data_path(file))), times);
        require(res.index == expected, file + ": index " + std::to_string(res.index) + " != " +
                                           std::to_string(expected));
        for (std::size_t i = 0; i < times.size(); ++i)
            require(std::abs(res.supertraces[i] - static_cast<double>(expected)) <= 1e-8,
                    file + ": supertrace drifts at t = " + std::to_string(times[i]));
    }
}

void partitioned_difference() {
    GroupoidDescriptor d = make_partitioned_circle();
    for (int kp = -3; kp <= 3; ++kp)
        for (int kpp = -3; kpp <= 3; ++kpp) {
            long got = partitioned_k_index(kp, kpp, d);
            long expected = (-kp) - (-kpp);
            require(got == expected, "(k', k'') = (" + std::to_string(kp) + ", " +
                                         std::to_string(kpp) + "): index " + std::to_string(got) +
                                         " != " + std::to_string(expected));
        }
}

void parity_vanishing() {
    for (int q : {3, 5}) {
        std::mt19937 rng(7000 + static_cast<unsigned>(q));
        for (int field_id = 0; field_id < 20; ++field_id) {
            ParityField field(q, 4, 0, random_polynomial(rng, q), 6);
            ParityIntegral res = antipodal_parity_integral(field, 12);
            require(res.residual < 1e-8, "q=" + std::to_string(q) + " field " +
                                             std::to_string(field_id) + ": residual " +
                                             std::to_string(res.residual));
        }
        ParityField control(
            q, 2, 1, [](const std::vector<double>&) { return 1.0; }, 0);
        require(antipodal_parity_integral(control, 12).residual > 1e-2,
                "q=" + std::to_string(q) + ": even-parity control cancelled");
    }
}

void negative_space() {
    GroupoidDescriptor nonexp = make_odd_sphere_point(3);
    nonexp.strata[1].isotropy_exponential = false;
    bool threw = false;
    try {
        compute_k(nonexp);
    } catch (const UnsupportedIsotropyError& e) {
        threw = true;
        require(e.stratum == 1, "unsupported-isotropy error blames the wrong stratum");
    }
    require(threw, "non-exponential isotropy was computed instead of refused");

    GroupoidDescriptor outside;
    outside.name = "two_sided_odd";
    outside.case_tag = CaseTag::Generic;
    StratumDescriptor top;
    top.leaf_dim = 3;
    top.isotropy_dim = 0;
    top.isotropy_exponential = true;
    top.components = 2;
    top.topology_tag = TopologyTag::Other;
    StratumDescriptor deep;
    deep.leaf_dim = 0;
    deep.isotropy_dim = 3;
    deep.isotropy_exponential = true;
    deep.components = 1;
    deep.topology_tag = TopologyTag::Connected;
    outside.strata = {top, deep};

    ComputeOutcome outcome = compute_k(outside);
    const PartialSolution* partial = std::get_if<PartialSolution>(&outcome);
    require(partial != nullptr, "a descriptor outside the rule base produced a K-group");
    require(partial->level == 0, "partial solution names level " +
                                     std::to_string(partial->level) + ", expected 0");
    require(!partial->reason.empty() && !partial->detail.empty(),
            "partial solution carries no explanation");
}

struct Criterion {
    std::string title;
    std::function<void()> run;
    double budget_seconds = 0.0; // 0 means no stated budget
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"golden K-group suite across the shipped families", golden_k_groups, 1.0},
        {"fredholm_inclusion matrix forms (iso, zero, difference)", fredholm_inclusion_forms, 0.0},
        {"six-term exactness and 500 Smith factorizations", exactness_and_smith, 0.0},
        {"Toeplitz index equals minus the winding, k in [-5, 5]", toeplitz_oracle, 5.0},
        {"McKean-Singer indices and supertrace constancy", mckean_singer_oracle, 5.0},
        {"partitioned difference index over [-3, 3]^2", partitioned_difference, 0.0},
        {"antipodal parity vanishing with even-parity control", parity_vanishing, 0.0},
        {"negative space: refusal and partial solutions", negative_space, 0.0},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        auto start = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string note;
        try {
            c.run();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            note = e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (verdict == "PASS" && c.budget_seconds > 0.0 && elapsed > c.budget_seconds) {
            verdict = "FAIL";
            note = "exceeded the " + std::to_string(c.budget_seconds) + " s budget";
        }
        if (verdict == "FAIL") ++failures;
        std::ostringstream line;
        line << "[" << verdict << "] " << (i + 1) << ". " << c.title;
        line << " (" << static_cast<long>(elapsed * 1000.0) << " ms)";
        if (!note.empty()) line << " -- " << note;
        std::cout << line.str() << "\n";
    }
    if (failures == 0)
        std::cout << "all " << criteria.size() << " acceptance criteria hold\n";
    else
        std::cout << failures << " of " << criteria.size() << " acceptance criteria fail\n";
    return failures == 0 ? 0 : 1;
}
