#include "qquiver/cli.hpp"

#include "qquiver/braid.hpp"
#include "qquiver/coloring.hpp"
#include "qquiver/counting.hpp"
#include "qquiver/errors.hpp"
#include "qquiver/io_export.hpp"
#include "qquiver/quandle.hpp"
#include "qquiver/quiver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace qquiver {

namespace {

int severity(int code) {
    switch (code) {
        case kExitMismatch:
            return 4;
        case kExitCapExceeded:
            return 3;
        case kExitAmbiguous:
            return 2;
        case kExitUsage:
            return 5;
        default:
            return 0;
    }
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
    if (const char* v = std::getenv(name)) {
        try {
            const auto parsed = parse_u64(v);
            if (parsed > 0) {
                return parsed;
            }
        } catch (const std::invalid_argument&) {
        }
    }
    return fallback;
}

struct Caps {
    std::uint64_t oracle = env_or("QQUIVER_ORACLE_CAP", kDefaultOracleCap);
    std::uint64_t enumeration = env_or("QQUIVER_ENUM_CAP", kDefaultEnumerationCap);
    std::uint64_t brute = env_or("QQUIVER_BRUTE_CAP", kDefaultEndomorphismCap);
    std::uint64_t iso_budget = env_or("QQUIVER_ISO_BUDGET", kDefaultIsoBudget);

    void add_options(CLI::App& app) {
        app.add_option("--oracle-cap", oracle, "Largest n^strands the brute-force oracle may scan")
            ->check(CLI::PositiveNumber);
        app.add_option("--enum-cap", enumeration, "Largest coloring set to enumerate")->check(CLI::PositiveNumber);
    }
};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

struct CountConfig {
    std::string link;
    std::optional<std::size_t> strands;
    std::uint64_t n = 0;
    std::string backend = "all";
    std::string out_path;
};

int cmd_count(const CountConfig& cfg, const Caps& caps, std::ostream& out, std::ostream& err) {
    const LinkInput link = parse_link(cfg.link, cfg.strands);
    if (cfg.n < 2) {
        throw InvalidModulus("--n must be at least 2");
    }
    const bool all = cfg.backend == "all";
    int code = kExitOk;
    nlohmann::json report{{"link", link.label}, {"n", cfg.n}};

    std::optional<BigInt> linear;
    std::optional<BigInt> oracle;
    if (all || cfg.backend == "linear") {
        linear = LinearColoringSystem(link.word, link.label).count(cfg.n);
        out << "linear:  " << to_decimal(*linear) << '\n';
        report["linear"] = to_decimal(*linear);
    }
    if (all || cfg.backend == "oracle") {
        try {
            oracle = BigInt(count_colorings_oracle(link.word, DihedralQuandle(cfg.n).table(), caps.oracle));
            out << "oracle:  " << to_decimal(*oracle) << '\n';
            report["oracle"] = to_decimal(*oracle);
        } catch (const CapExceeded& e) {
            out << "oracle:  skipped (" << e.what() << ")\n";
            report["oracle"] = "skipped";
            code = worse_exit(code, kExitCapExceeded);
        }
    }
    if (linear && oracle && *linear != *oracle) {
        err << "error: backends disagree (linear " << to_decimal(*linear) << ", oracle " << to_decimal(*oracle)
            << ")\n";
        code = worse_exit(code, kExitMismatch);
    }
    const std::optional<BigInt> computed = linear ? linear : oracle;

    std::optional<CountPrediction> pred;
    if ((all || cfg.backend == "formula") && link.torus) {
        try {
            pred = predict_count(link.torus->p, link.torus->q, cfg.n);
        } catch (const UnsupportedParameters& e) {
            out << "formula: n/a (" << e.what() << ")\n";
        }
    } else if (cfg.backend == "formula") {
        throw UnsupportedParameters("the closed form only covers torus links");
    }
    if (pred) {
        report["case"] = std::string(to_string(pred->label));
        report["predicted"] = to_decimal(pred->count);
        out << "formula: " << to_decimal(pred->count);
        if (pred->alternative) {
            out << " or " << to_decimal(*pred->alternative);
            report["alternative"] = to_decimal(*pred->alternative);
        }
        out << " (" << to_string(pred->label) << ")\n";
        if (pred->ambiguous()) {
            out << "note:    " << pred->note << '\n';
            if (computed) {
                const auto cands = pred->candidates();
                if (std::find(cands.begin(), cands.end(), *computed) == cands.end()) {
                    err << "error: computed " << to_decimal(*computed) << " matches neither candidate\n";
                    code = worse_exit(code, kExitMismatch);
                } else {
                    out << "winner:  " << to_decimal(*computed)
                        << (*computed == pred->count ? " (general rule)" : " (tabulated value)") << '\n';
                    report["winner"] = to_decimal(*computed);
                }
            }
            code = worse_exit(code, kExitAmbiguous);
        } else if (computed && *computed != pred->count) {
            err << "error: predicted " << to_decimal(pred->count) << ", computed " << to_decimal(*computed) << '\n';
            code = worse_exit(code, kExitMismatch);
        }
    }
    if (computed) {
        out << "count:   " << to_decimal(*computed) << '\n';
        report["count"] = to_decimal(*computed);
    }
    report["exit"] = code;
    if (!cfg.out_path.empty()) {
        write_text_file(cfg.out_path, report.dump(2));
    }
    return code;
}

struct QuiverConfig {
    std::string link;
    std::optional<std::size_t> strands;
    std::uint64_t n = 0;
    bool compare = false;
    std::string format;
    bool collapse = false;
    bool no_loops = false;
    std::string endos = "affine";
    std::string out_path;
};

int cmd_quiver(const QuiverConfig& cfg, const Caps& caps, std::ostream& out, std::ostream& err) {
    const LinkInput link = parse_link(cfg.link, cfg.strands);
    if (cfg.n < 2) {
        throw InvalidModulus("--n must be at least 2");
    }
    ExportOptions opts;
    if (!cfg.format.empty()) {
        const auto f = parse_export_format(cfg.format);
        if (!f || *f == ExportFormat::csv) {
            throw std::invalid_argument("quiver output format must be dot or json");
        }
        opts.format = *f;
    }
    opts.collapse_blocks = cfg.collapse;
    opts.include_loops = !cfg.no_loops;
    opts.validate();
    const auto source = parse_endo_source(cfg.endos);
    if (!source) {
        throw std::invalid_argument("--endos must be affine or brute");
    }

    // With an export on stdout, the summary goes to stderr.
    std::ostream& info = (!cfg.format.empty() && cfg.out_path.empty()) ? err : out;
    int code = kExitOk;

    const LinearColoringSystem system(link.word, link.label);
    const ColoringSet colorings = system.colorings(cfg.n, caps.enumeration);
    if (!colorings.enumerated()) {
        throw CapExceeded("coloring set has " + to_decimal(colorings.count()) + " elements, above --enum-cap " +
                              std::to_string(caps.enumeration),
                          colorings.count() > std::numeric_limits<std::uint64_t>::max()
                              ? std::numeric_limits<std::uint64_t>::max()
                              : colorings.count().convert_to<std::uint64_t>(),
                          caps.enumeration);
    }
    const auto endos = dihedral_endomorphisms(cfg.n, *source, caps.brute);
    const WeightedQuiver q = build_quiver(colorings, endos);
    info << "link:          " << link.label << '\n';
    info << "colorings:     " << colorings.size() << " (" << colorings.trivial_indices().size() << " trivial)\n";
    info << "endomorphisms: " << endos.size() << " (" << to_string(*source) << ")\n";

    const auto inv = check_quiver_invariants(q, colorings, endos.size(), cfg.n);
    if (!inv.all()) {
        err << "error: quiver invariant violated: " << inv.witness << '\n';
        code = worse_exit(code, kExitMismatch);
    }

    QuiverReport report;
    report.link = link.label;
    report.n = cfg.n;
    report.endo_source = std::string(to_string(*source));
    report.count = colorings.count();
    report.quiver = q;
    if (link.torus) {
        report.p = link.torus->p;
        report.q = link.torus->q;
    }

    if (cfg.compare) {
        std::optional<QuiverForm> form;
        if (!link.torus) {
            info << "predicted:     none (closed forms cover torus links only)\n";
        } else {
            try {
                const CountPrediction pred = predict_count(link.torus->p, link.torus->q, cfg.n);
                report.count_case = pred.label;
                if (pred.ambiguous()) {
                    info << "note:          " << pred.note << "; comparing with the shape of the computed count\n";
                    form = quiver_form_for_count(link.torus->p, cfg.n, colorings.count());
                    code = worse_exit(code, kExitAmbiguous);
                } else {
                    form = predict_quiver(link.torus->p, link.torus->q, cfg.n);
                }
            } catch (const UnsupportedParameters& e) {
                info << "predicted:     none (" << e.what() << ")\n";
            }
        }
        if (form) {
            const IsoResult iso = isomorphic(q, realize(*form), caps.iso_budget);
            report.predicted = form->to_string();
            report.verdict = iso.verdict;
            info << "predicted:     " << form->to_string() << '\n';
            info << "isomorphic:    "
                 << (iso.verdict == IsoVerdict::isomorphic       ? "true"
                     : iso.verdict == IsoVerdict::not_isomorphic ? "false"
                                                                 : "undecided")
                 << '\n';
            if (iso.verdict == IsoVerdict::not_isomorphic) {
                err << "error: " << iso.reason << '\n';
                code = worse_exit(code, kExitMismatch);
            } else if (iso.verdict == IsoVerdict::undecided) {
                err << "warning: " << iso.reason << '\n';
                code = worse_exit(code, kExitCapExceeded);
            }
        } else if (link.torus) {
            info << "predicted:     none for this count\n";
        }
    }

    if (!cfg.format.empty()) {
        const std::string text =
            opts.format == ExportFormat::dot ? to_dot(q, opts, link.label) : to_json(report);
        emit(text, cfg.out_path, out);
    } else if (!cfg.out_path.empty()) {
        write_text_file(cfg.out_path, to_json(report));
    }
    return code;
}

struct VerifyConfig {
    std::string p = "3,5,7";
    std::string q = "0..14";
    std::string n = "2..9";
    std::string backend = "all";
    std::string out_path;
    bool quivers = false;
    std::uint64_t max_space = 0;
};

template <class T>
std::vector<T> narrow(const std::vector<std::uint64_t>& values, const char* what) {
    std::vector<T> out;
    for (auto v : values) {
        if (v > std::numeric_limits<T>::max()) {
            throw std::invalid_argument(std::string(what) + " value too large: " + std::to_string(v));
        }
        out.push_back(static_cast<T>(v));
    }
    return out;
}

int cmd_verify(const VerifyConfig& cfg, const Caps& caps, std::ostream& out, std::ostream& err) {
    GridSpec grid;
    grid.p = narrow<std::uint32_t>(parse_range(cfg.p), "--p");
    grid.q = narrow<std::uint32_t>(parse_range(cfg.q), "--q");
    grid.n = parse_range(cfg.n);

    VerifyOptions options;
    options.run_linear = cfg.backend == "all" || cfg.backend == "linear";
    options.run_oracle = cfg.backend == "all" || cfg.backend == "oracle";
    options.oracle_cap = caps.oracle;
    options.max_colorings_space = cfg.max_space;

    SweepReport report = verify_counts(grid, options);
    if (cfg.quivers) {
        QuiverCheckOptions qopts;
        qopts.max_vertices = caps.enumeration;
        qopts.iso_budget = caps.iso_budget;
        attach_quiver_checks(report, qopts);
    }

    if (!cfg.out_path.empty()) {
        write_text_file(cfg.out_path, ends_with(cfg.out_path, ".csv") ? to_csv(report) : to_json(report));
    }

    std::size_t skipped = 0;
    for (const auto& c : report.cells) {
        skipped += c.oracle_skipped ? 1 : 0;
        if (c.status != CellStatus::match) {
            (c.status == CellStatus::mismatch ? err : out)
                << to_string(c.status) << ": T(" << c.p << "," << c.q << ") n=" << c.n << " computed "
                << to_decimal(c.computed) << " (" << c.detail << ")\n";
        }
    }
    out << "cells: " << report.cells.size() << ", match: " << report.count(CellStatus::match)
        << ", ambiguous-resolved: " << report.count(CellStatus::ambiguous_resolved)
        << ", mismatch: " << report.count(CellStatus::mismatch) << ", oracle skipped: " << skipped << '\n';

    int code = kExitOk;
    if (report.has_mismatch()) {
        code = worse_exit(code, kExitMismatch);
    }
    if (report.cap_exceeded()) {
        code = worse_exit(code, kExitCapExceeded);
    }
    if (report.has_ambiguous()) {
        code = worse_exit(code, kExitAmbiguous);
    }
    return code;
}

int cmd_endos(const std::string& range, const Caps& caps, std::ostream& out) {
    int code = kExitOk;
    for (auto n : parse_range(range)) {
        const auto audit = audit_endomorphisms(n, caps.brute);
        out << audit.to_string() << '\n';
        if (!audit.complete()) {
            code = worse_exit(code, kExitMismatch);
        }
    }
    return code;
}

}  // namespace

int worse_exit(int a, int b) { return severity(b) > severity(a) ? b : a; }

std::vector<std::uint64_t> parse_range(std::string_view text) {
    std::vector<std::uint64_t> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view part = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        if (part.empty()) {
            continue;
        }
        const auto dots = part.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_u64(part));
            continue;
        }
        const auto lo = parse_u64(part.substr(0, dots));
        const auto hi = parse_u64(part.substr(dots + 2));
        if (hi < lo) {
            throw std::invalid_argument("empty range '" + std::string(part) + "'");
        }
        if (hi - lo > 1'000'000) {
            throw std::invalid_argument("range '" + std::string(part) + "' is too long");
        }
        for (auto v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quandle colorings and coloring quivers of braid closures over dihedral quandles", "qquiver"};
    app.require_subcommand(1);
    Caps caps;

    CountConfig count_cfg;
    auto* count = app.add_subcommand("count", "Count colorings with each backend and the closed form");
    count->add_option("--link", count_cfg.link, "torus:p,q or a braid word such as \"s1 -s2 s1 -s2\"")
        ->required();
    count->add_option("--strands", count_cfg.strands, "Strand count for a braid word");
    count->add_option("--n", count_cfg.n, "Order of the dihedral quandle R_n")->required();
    count->add_option("--backend", count_cfg.backend, "oracle, linear, formula or all")
        ->check(CLI::IsMember({"oracle", "linear", "formula", "all"}));
    count->add_option("--out", count_cfg.out_path, "Write a JSON summary here");
    caps.add_options(*count);

    QuiverConfig quiver_cfg;
    auto* quiver = app.add_subcommand("quiver", "Build the full coloring quiver");
    quiver->add_option("--link", quiver_cfg.link, "torus:p,q or a braid word")->required();
    quiver->add_option("--strands", quiver_cfg.strands, "Strand count for a braid word");
    quiver->add_option("--n", quiver_cfg.n, "Order of the dihedral quandle R_n")->required();
    quiver->add_flag("--compare", quiver_cfg.compare, "Compare with the closed-form quiver");
    quiver->add_option("--format", quiver_cfg.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    quiver->add_flag("--collapse", quiver_cfg.collapse, "DOT: one node per detected block");
    quiver->add_flag("--no-loops", quiver_cfg.no_loops, "DOT: omit self edges");
    quiver->add_option("--endos", quiver_cfg.endos, "affine (default) or brute")
        ->check(CLI::IsMember({"affine", "brute"}));
    quiver->add_option("--out", quiver_cfg.out_path, "Output file (default: standard output)");
    caps.add_options(*quiver);

    VerifyConfig verify_cfg;
    auto* verify = app.add_subcommand("verify", "Sweep a (p, q, n) grid against the closed form");
    verify->add_option("--p", verify_cfg.p, "Odd primes, e.g. 3,5,7")->capture_default_str();
    verify->add_option("--q", verify_cfg.q, "Range such as 0..14")->capture_default_str();
    verify->add_option("--n", verify_cfg.n, "Range such as 2..9")->capture_default_str();
    verify->add_option("--backend", verify_cfg.backend, "oracle, linear or all")
        ->check(CLI::IsMember({"oracle", "linear", "all"}));
    verify->add_option("--out", verify_cfg.out_path, "Report file; .csv gives CSV, anything else JSON");
    verify->add_flag("--quivers", verify_cfg.quivers, "Also build each quiver and compare with its closed form");
    verify->add_option("--max-space", verify_cfg.max_space, "Skip cells with n^p above this");
    caps.add_options(*verify);

    std::string endos_range;
    auto* endos = app.add_subcommand("endos", "Compare affine endomorphisms of R_n with exhaustive search");
    endos->add_option("--n", endos_range, "Range such as 2..6")->required();

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("qquiver");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) {
        argv.push_back(s.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*count) {
            return cmd_count(count_cfg, caps, out, err);
        }
        if (*quiver) {
            return cmd_quiver(quiver_cfg, caps, out, err);
        }
        if (*verify) {
            return cmd_verify(verify_cfg, caps, out, err);
        }
        if (*endos) {
            return cmd_endos(endos_range, caps, out);
        }
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return kExitCapExceeded;
    } catch (const ConsistencyError& e) {
        err << "internal consistency error: " << e.what() << '\n';
        return kExitMismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qquiver
