#include "kbg/descriptor.hpp"
#include "kbg/heat.hpp"
#include "kbg/k_engine.hpp"
#include "kbg/partitioned_index.hpp"
#include "kbg/simplicial.hpp"
#include "kbg/sphere_parity.hpp"
#include "kbg/toeplitz.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace kbg;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kPartial = 2;
constexpr int kMismatch = 3;
constexpr int kIo = 4;

std::string examples_dir() {
    const char* env = std::getenv("KBG_EXAMPLES_DIR");
    if (env && *env) return env;
    return KBG_DATA_DIR;
}

// Paths are taken as given when they exist; bare names fall back to the
// shipped-examples directory so `compute even_q.json` works from anywhere.
std::string resolve_input(const std::string& path) {
    std::error_code ec;
    if (fs::exists(path, ec)) return path;
    fs::path fallback = fs::path(examples_dir()) / path;
    if (fs::exists(fallback, ec)) return fallback.string();
    return path;
}

struct FileReport {
    json data;
    int status = kOk;
};

json trace_json(const std::vector<TraceStep>& trace) {
    json steps = json::array();
    for (const TraceStep& s : trace)
        steps.push_back({{"level", s.level}, {"kind", s.kind}, {"text", s.text}});
    return steps;
}

// Worker shared by compute and validate. Everything the text summary shows
// is carried in the JSON object, so the text form is rendered from it.
FileReport build_report(const std::string& given, const std::map<std::string, long>& params,
                        bool want_trace, bool run_engine) {
    FileReport out;
    out.data["input"] = given;

    std::ifstream in(resolve_input(given));
    if (!in) {
        out.data["status"] = "io-error";
        out.data["error"] = "cannot read file";
        out.status = kIo;
        return out;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    ParseOutcome parsed = parse_descriptor(buffer.str());
    if (const auto* errors = std::get_if<std::vector<ParseError>>(&parsed)) {
        json list = json::array();
        for (const ParseError& e : *errors)
            list.push_back({{"where", e.where}, {"message", e.message}});
        out.data["status"] = "invalid";
        out.data["errors"] = list;
        out.status = kInvalid;
        return out;
    }
    GroupoidDescriptor d = std::get<GroupoidDescriptor>(parsed);

    if (!params.empty()) {
        try {
            d = apply_params(d, params);
        } catch (const InvalidDescriptorError& e) {
            out.data["status"] = "invalid";
            out.data["errors"] = json::array({{{"where", "--param"}, {"message", e.what()}}});
            out.status = kInvalid;
            return out;
        }
    }
    out.data["name"] = d.name;

    ValidationReport report = validate_descriptor(d);
    if (!report.valid()) {
        json list = json::array();
        for (const Violation& v : report.violations) {
            json row = {{"clause", v.clause}, {"message", v.message}};
            if (v.stratum) row["stratum"] = *v.stratum;
            list.push_back(row);
        }
        out.data["status"] = "invalid";
        out.data["violations"] = list;
        out.status = kInvalid;
        return out;
    }

    if (!run_engine) {
        out.data["status"] = "valid";
        return out;
    }

    try {
        ComputeOutcome outcome = compute_k(d);
        if (const auto* partial = std::get_if<PartialSolution>(&outcome)) {
            out.data["status"] = "partial";
            out.data["partial"] = {{"level", partial->level},
                                   {"slot", partial->slot},
                                   {"reason", partial->reason},
                                   {"detail", partial->detail}};
            if (want_trace) out.data["trace"] = trace_json(partial->trace);
            out.status = kPartial;
            return out;
        }
        const KResult& res = std::get<KResult>(outcome);
        out.data["status"] = "ok";
        out.data["k0"] = res.k0.str();
        out.data["k1"] = res.k1.str();
        json origins = json::array();
        for (const GeneratorOrigin& o : res.provenance) origins.push_back(to_string(o));
        out.data["provenance"] = origins;
        if (want_trace) out.data["trace"] = trace_json(res.trace);
    } catch (const UnsupportedIsotropyError& e) {
        out.data["status"] = "unsupported";
        out.data["stratum"] = e.stratum;
        out.data["error"] = e.what();
        out.status = kPartial;
    }
    return out;
}

void render_trace(std::ostream& os, const json& report) {
    if (!report.contains("trace")) return;
    os << "  trace:\n";
    for (const json& s : report["trace"])
        os << "    level " << s["level"].get<std::size_t>() << " ["
           << s["kind"].get<std::string>() << "] " << s["text"].get<std::string>() << "\n";
}

// The text summary is a projection of the JSON report; nothing is printed
// that the JSON form does not carry.
void render_text(std::ostream& os, const json& report) {
    const std::string input = report["input"].get<std::string>();
    const std::string status = report["status"].get<std::string>();
    if (status == "io-error") {
        os << input << ": i/o error: " << report["error"].get<std::string>() << "\n";
    } else if (status == "invalid") {
        os << input << ": invalid descriptor\n";
        if (report.contains("errors"))
            for (const json& e : report["errors"])
                os << "  " << e["where"].get<std::string>() << ": "
                   << e["message"].get<std::string>() << "\n";
        if (report.contains("violations"))
            for (const json& v : report["violations"]) {
                os << "  [" << v["clause"].get<std::string>() << "] "
                   << v["message"].get<std::string>();
                if (v.contains("stratum")) os << " (stratum " << v["stratum"].get<std::size_t>() << ")";
                os << "\n";
            }
    } else if (status == "partial") {
        const json& p = report["partial"];
        os << input << ": partial solution, blocked at level " << p["level"].get<std::size_t>()
           << " (" << p["slot"].get<std::string>() << " map): " << p["reason"].get<std::string>()
           << "\n  " << p["detail"].get<std::string>() << "\n";
        render_trace(os, report);
    } else if (status == "unsupported") {
        os << input << ": unsupported isotropy (stratum " << report["stratum"].get<std::size_t>()
           << "): " << report["error"].get<std::string>() << "\n";
    } else if (status == "valid") {
        os << input << ": valid\n";
    } else {
        os << input << ": K0 = " << report["k0"].get<std::string>() << ", K1 = "
           << report["k1"].get<std::string>() << "\n";
        const json& origins = report["provenance"];
        for (std::size_t i = 0; i < origins.size(); ++i)
            os << "  K0[" << i << "] <- " << origins[i].get<std::string>() << "\n";
        render_trace(os, report);
    }
}

int worst_status(const std::vector<FileReport>& reports) {
    for (int code : {kIo, kInvalid, kPartial})
        for (const FileReport& r : reports)
            if (r.status == code) return code;
    return kOk;
}

int emit_reports(const std::vector<FileReport>& reports, bool as_json) {
    if (as_json) {
        json doc;
        doc["reports"] = json::array();
        for (const FileReport& r : reports) doc["reports"].push_back(r.data);
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const FileReport& r : reports) render_text(std::cout, r.data);
    }
    return worst_status(reports);
}

std::map<std::string, long> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, long> params;
    for (const std::string& entry : raw) {
        auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CLI::ValidationError("--param", "expected key=value, got \"" + entry + "\"");
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(entry.substr(eq + 1), &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--param", "value in \"" + entry + "\" is not an integer");
        }
        if (used != entry.size() - eq - 1)
            throw CLI::ValidationError("--param", "value in \"" + entry + "\" is not an integer");
        params[entry.substr(0, eq)] = value;
    }
    return params;
}

int run_files(const std::vector<std::string>& paths, const std::vector<std::string>& raw_params,
              bool as_json, bool want_trace, bool run_engine) {
    std::map<std::string, long> params = parse_params(raw_params);
    std::vector<std::future<FileReport>> futures;
    futures.reserve(paths.size());
    for (const std::string& path : paths)
        futures.push_back(std::async(std::launch::async, build_report, path, params, want_trace,
                                     run_engine));
    std::vector<FileReport> reports;
    reports.reserve(paths.size());
    for (auto& f : futures) reports.push_back(f.get());
    return emit_reports(reports, as_json);
}

int run_examples(bool as_json) {
    std::error_code ec;
    fs::directory_iterator it(examples_dir(), ec);
    if (ec) {
        std::cerr << examples_dir() << ": i/o error: " << ec.message() << "\n";
        return kIo;
    }
    std::vector<std::string> files;
    for (const fs::directory_entry& entry : it)
        if (entry.path().extension() == ".json") files.push_back(entry.path().filename().string());
    std::sort(files.begin(), files.end());

    json doc;
    doc["examples"] = json::array();
    for (const std::string& file : files) {
        json row;
        row["file"] = file;
        std::ifstream in(fs::path(examples_dir()) / file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        ParseOutcome parsed = parse_descriptor(buffer.str());
        if (const auto* d = std::get_if<GroupoidDescriptor>(&parsed)) row["name"] = d->name;
        doc["examples"].push_back(row);
    }
    if (as_json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const json& row : doc["examples"]) {
            std::cout << row["file"].get<std::string>();
            if (row.contains("name")) std::cout << "  (" << row["name"].get<std::string>() << ")";
            std::cout << "\n";
        }
    }
    return kOk;
}

struct OracleRow {
    std::string name;
    std::string expected;
    std::string computed;
    bool ok = true;
};

std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
}

void oracle_toeplitz(std::vector<OracleRow>& rows) {
    for (int k = -5; k <= 5; ++k) {
        OracleRow row;
        row.name = "toeplitz z^" + std::to_string(k);
        row.expected = std::to_string(-k);
        try {
            ToeplitzSymbol sym = ToeplitzSymbol::power(k);
            int index = toeplitz_index(sym, 64);
            int winding = winding_number(sym);
            row.computed = std::to_string(index);
            row.ok = index == -k && index == -winding;
            if (index != -winding) row.computed += " (winding " + std::to_string(winding) + ")";
        } catch (const std::exception& e) {
            row.computed = std::string("exception: ") + e.what();
            row.ok = false;
        }
        rows.push_back(row);
    }
}

void oracle_heat(std::vector<OracleRow>& rows) {
    const std::vector<std::pair<std::string, long>> cases{
        {"octahedron.cplx", 2}, {"torus_7x7.cplx", 0}, {"point.cplx", 1}};
    for (const auto& [file, expected] : cases) {
        OracleRow row;
        row.name = "heat " + file;
        row.expected = std::to_string(expected);
        try {
            HeatModel model =
                hodge_even_odd_operator(load_complex((fs::path(examples_dir()) / file).string()));
            McKeanSingerResult res = mckean_singer_index(model, {0.1, 1.0, 10.0});
            row.computed = std::to_string(res.index);
            row.ok = res.index == expected;
        } catch (const std::exception& e) {
            row.computed = std::string("exception: ") + e.what();
            row.ok = false;
        }
        rows.push_back(row);
    }
}

// Ten-term random polynomials of total degree <= 6, antisymmetrized by the
// field constructor; the integrals must cancel to the residual bound.
void oracle_parity(std::vector<OracleRow>& rows) {
    for (int q : {3, 5}) {
        std::mt19937 rng(1000 + static_cast<unsigned>(q));
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        std::uniform_int_distribution<int> pick(0, q - 1);
        std::uniform_int_distribution<int> total(0, 6);
        for (int field_id = 0; field_id < 20; ++field_id) {
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
            auto sample = [terms](const std::vector<double>& x) {
                double sum = 0.0;
                for (const auto& term : *terms) {
                    double v = term.c;
                    for (std::size_t i = 0; i < x.size(); ++i)
                        for (int p = 0; p < term.powers[i]; ++p) v *= x[i];
                    sum += v;
                }
                return sum;
            };
            OracleRow row;
            row.name = "parity q=" + std::to_string(q) + " field " + std::to_string(field_id);
            row.expected = "residual < 1e-08";
            try {
                ParityField field(q, 4, 0, sample, 6);
                ParityIntegral res = antipodal_parity_integral(field, 12);
                row.computed = format_residual(res.residual);
                row.ok = res.residual < 1e-8;
            } catch (const std::exception& e) {
                row.computed = std::string("exception: ") + e.what();
                row.ok = false;
            }
            rows.push_back(row);
        }
        OracleRow control;
        control.name = "parity q=" + std::to_string(q) + " even control";
        control.expected = "residual > 1e-02";
        try {
            ParityField field(
                q, 2, 1, [](const std::vector<double>&) { return 1.0; }, 0);
            ParityIntegral res = antipodal_parity_integral(field, 12);
            control.computed = format_residual(res.residual);
            control.ok = res.residual > 1e-2;
        } catch (const std::exception& e) {
            control.computed = std::string("exception: ") + e.what();
            control.ok = false;
        }
        rows.push_back(control);
    }
}

void oracle_partitioned(std::vector<OracleRow>& rows) {
    GroupoidDescriptor d = make_partitioned_circle();
    for (int kp = -3; kp <= 3; ++kp) {
        for (int kpp = -3; kpp <= 3; ++kpp) {
            OracleRow row;
            row.name = "partitioned k'=" + std::to_string(kp) + " k''=" + std::to_string(kpp);
            row.expected = std::to_string(kpp - kp);
            try {
                long index = partitioned_k_index(kp, kpp, d);
                row.computed = std::to_string(index);
                row.ok = index == kpp - kp;
            } catch (const std::exception& e) {
                row.computed = std::string("exception: ") + e.what();
                row.ok = false;
            }
            rows.push_back(row);
        }
    }
}

int run_oracles(const std::string& selector, bool as_json) {
    std::vector<OracleRow> rows;
    if (selector == "all" || selector == "toeplitz") oracle_toeplitz(rows);
    if (selector == "all" || selector == "heat") oracle_heat(rows);
    if (selector == "all" || selector == "parity") oracle_parity(rows);
    if (selector == "all" || selector == "partitioned") oracle_partitioned(rows);

    int mismatches = 0;
    for (const OracleRow& row : rows)
        if (!row.ok) ++mismatches;

    if (as_json) {
        json doc;
        doc["oracles"] = json::array();
        for (const OracleRow& row : rows)
            doc["oracles"].push_back({{"case", row.name},
                                      {"expected", row.expected},
                                      {"computed", row.computed},
                                      {"ok", row.ok}});
        doc["mismatches"] = mismatches;
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const OracleRow& row : rows)
            std::cout << (row.ok ? "[ ok ] " : "[FAIL] ") << row.name << ": expected "
                      << row.expected << ", computed " << row.computed << "\n";
        if (mismatches == 0)
            std::cout << rows.size() << " oracle cases, all match\n";
        else
            std::cout << mismatches << " of " << rows.size() << " oracle cases mismatch\n";
    }
    return mismatches == 0 ? kOk : kMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"K-groups of stratified groupoid C*-algebras, with numerical index oracles"};
    app.require_subcommand(1);

    bool json_out = false;
    bool trace = false;
    std::vector<std::string> params;
    std::vector<std::string> compute_paths;
    std::vector<std::string> validate_paths;
    std::string selector = "all";

    CLI::App* compute = app.add_subcommand("compute", "compute K0/K1 from descriptor files");
    compute->add_option("paths", compute_paths, "descriptor files")->required();
    compute->add_flag("--json", json_out, "emit a JSON report");
    compute->add_flag("--trace", trace, "include the derivation trace");
    compute->add_option("--param", params, "template parameter key=value (such as n=3)");

    CLI::App* validate = app.add_subcommand("validate", "check descriptor files");
    validate->add_option("paths", validate_paths, "descriptor files")->required();
    validate->add_flag("--json", json_out, "emit a JSON report");
    validate->add_option("--param", params, "template parameter key=value");

    CLI::App* oracles = app.add_subcommand("oracles", "run the numerical index oracles");
    oracles->add_option("selector", selector, "all | toeplitz | heat | parity | partitioned")
        ->check(CLI::IsMember({"all", "toeplitz", "heat", "parity", "partitioned"}));
    oracles->add_flag("--json", json_out, "emit a JSON report");

    CLI::App* examples = app.add_subcommand("examples", "list the shipped descriptors");
    examples->add_flag("--json", json_out, "emit a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (compute->parsed()) return run_files(compute_paths, params, json_out, trace, true);
        if (validate->parsed()) return run_files(validate_paths, params, json_out, false, false);
        if (oracles->parsed()) return run_oracles(selector, json_out);
        return run_examples(json_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
}
