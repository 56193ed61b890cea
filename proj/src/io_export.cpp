#include "qquiver/io_export.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qquiver {

using nlohmann::json;

std::string_view to_string(ExportFormat f) {
    switch (f) {
        case ExportFormat::dot:
            return "dot";
        case ExportFormat::json:
            return "json";
        case ExportFormat::csv:
            return "csv";
    }
    return "json";
}

std::optional<ExportFormat> parse_export_format(std::string_view text) {
    for (auto f : {ExportFormat::dot, ExportFormat::json, ExportFormat::csv}) {
        if (to_string(f) == text) {
            return f;
        }
    }
    return std::nullopt;
}

void ExportOptions::validate() const {
    if (collapse_blocks && format != ExportFormat::dot) {
        throw std::invalid_argument("--collapse only applies to dot output");
    }
}

namespace {

std::string state_label(const StrandState& s) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << (i ? "," : "") << s[i];
    }
    os << ')';
    return os.str();
}

// Numbers that fit 64 bits are JSON numbers, larger ones decimal strings.
json big_to_json(const BigInt& v) {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) {
        return v.convert_to<std::uint64_t>();
    }
    return to_decimal(v);
}

BigInt big_from_json(const json& j) {
    if (j.is_number_unsigned()) {
        return BigInt(j.get<std::uint64_t>());
    }
    if (j.is_number_integer()) {
        return BigInt(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        return BigInt(j.get<std::string>());
    }
    throw std::invalid_argument("expected an integer or decimal string");
}

json optional_big(const std::optional<BigInt>& v) { return v ? big_to_json(*v) : json(nullptr); }

std::optional<BigInt> optional_big_from(const json& obj, const char* key) {
    if (!obj.contains(key) || obj.at(key).is_null()) {
        return std::nullopt;
    }
    return big_from_json(obj.at(key));
}

json blocks_json(const WeightedQuiver& q) {
    const BlockSummary summary = detect_blocks(q);
    json blocks = json::array();
    for (const auto& b : summary.blocks) {
        blocks.push_back({{"first", b.vertices.front()},
                          {"size", b.vertices.size()},
                          {"weight", b.weight ? json(*b.weight) : json(nullptr)}});
    }
    json edges = json::array();
    for (const auto& e : summary.edges) {
        edges.push_back({{"from", e.source},
                         {"to", e.target},
                         {"weight", e.weight ? json(*e.weight) : json(nullptr)},
                         {"total", e.total}});
    }
    return {{"blocks", blocks}, {"edges", edges}};
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_dot(const WeightedQuiver& q, const ExportOptions& opts, std::string_view title) {
    std::ostringstream os;
    os << "digraph \"" << title << "\" {\n";
    if (!opts.collapse_blocks) {
        for (std::size_t v = 0; v < q.size(); ++v) {
            os << "  v" << v;
            if (q.labels()) {
                os << " [label=\"" << state_label((*q.labels())[v]) << "\"]";
            }
            os << ";\n";
        }
        for (std::size_t v = 0; v < q.size(); ++v) {
            for (const auto& e : q.row(v)) {
                if (e.target == v && !opts.include_loops) {
                    continue;
                }
                os << "  v" << v << " -> v" << e.target << " [label=" << e.weight << "];\n";
            }
        }
        os << "}\n";
        return os.str();
    }

    const BlockSummary summary = detect_blocks(q);
    for (std::size_t b = 0; b < summary.blocks.size(); ++b) {
        const auto& block = summary.blocks[b];
        os << "  b" << b << " [label=\"K_" << block.vertices.size();
        if (block.weight) {
            os << ", w=" << *block.weight;
        } else {
            os << ", mixed";
        }
        os << "\"];\n";
        if (opts.include_loops && block.weight) {
            os << "  b" << b << " -> b" << b << " [label=\"w=" << *block.weight << "\"];\n";
        }
    }
    for (const auto& e : summary.edges) {
        os << "  b" << e.source << " -> b" << e.target << " [label=\"";
        if (e.weight) {
            os << "d=" << *e.weight;
        } else {
            os << "sum=" << e.total;
        }
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_json(const QuiverReport& report) {
    json out;
    if (!report.link.empty()) {
        json params{{"link", report.link}, {"n", report.n}};
        if (report.p) {
            params["p"] = *report.p;
        }
        if (report.q) {
            params["q"] = *report.q;
        }
        if (!report.endo_source.empty()) {
            params["endomorphisms"] = report.endo_source;
        }
        out["params"] = params;
    }
    out["count"] = big_to_json(report.count);
    if (report.count_case) {
        out["case"] = std::string(to_string(*report.count_case));
    }
    if (report.quiver.labels()) {
        out["colorings"] = *report.quiver.labels();
    }
    json weights = json::array();
    for (std::size_t v = 0; v < report.quiver.size(); ++v) {
        for (const auto& e : report.quiver.row(v)) {
            weights.push_back({v, e.target, e.weight});
        }
    }
    out["weights"] = weights;
    if (report.quiver.size() > 0) {
        out["blocks"] = blocks_json(report.quiver);
    }
    if (report.predicted) {
        out["predicted"] = *report.predicted;
    }
    if (report.verdict) {
        out["isomorphic"] = std::string(to_string(*report.verdict));
    }
    return dump(out);
}

QuiverReport quiver_report_from_json(std::string_view text) {
    const json j = parse_json(text);
    try {
        QuiverReport r;
        if (j.contains("params")) {
            const auto& params = j.at("params");
            r.link = params.at("link").get<std::string>();
            r.n = params.at("n").get<std::uint64_t>();
            if (params.contains("p")) {
                r.p = params.at("p").get<std::uint32_t>();
            }
            if (params.contains("q")) {
                r.q = params.at("q").get<std::uint32_t>();
            }
            if (params.contains("endomorphisms")) {
                r.endo_source = params.at("endomorphisms").get<std::string>();
            }
        }
        r.count = big_from_json(j.at("count"));
        if (j.contains("case")) {
            const auto c = parse_count_case(j.at("case").get<std::string>());
            if (!c) {
                throw std::invalid_argument("unknown case label");
            }
            r.count_case = *c;
        }
        std::size_t vertices = 0;
        std::optional<std::vector<StrandState>> labels;
        if (j.contains("colorings")) {
            labels = j.at("colorings").get<std::vector<StrandState>>();
            vertices = labels->size();
        } else if (!j.at("weights").empty() && r.count <= std::numeric_limits<std::size_t>::max()) {
            vertices = r.count.convert_to<std::size_t>();
        }
        std::vector<std::vector<WeightedEdge>> rows(vertices);
        for (const auto& t : j.at("weights")) {
            const auto from = t.at(0).get<std::size_t>();
            if (from >= vertices) {
                throw std::invalid_argument("weight triple source out of range");
            }
            rows[from].push_back({t.at(1).get<std::size_t>(), t.at(2).get<std::uint64_t>()});
        }
        r.quiver = WeightedQuiver::from_rows(std::move(rows));
        if (labels) {
            r.quiver.set_labels(std::move(*labels));
        }
        if (j.contains("predicted")) {
            r.predicted = j.at("predicted").get<std::string>();
        }
        if (j.contains("isomorphic")) {
            const auto s = j.at("isomorphic").get<std::string>();
            for (auto v : {IsoVerdict::isomorphic, IsoVerdict::not_isomorphic, IsoVerdict::undecided}) {
                if (to_string(v) == s) {
                    r.verdict = v;
                }
            }
            if (!r.verdict) {
                throw std::invalid_argument("unknown isomorphism verdict '" + s + "'");
            }
        }
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed quiver report: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw std::invalid_argument(std::string("malformed quiver report: ") + e.what());
    }
}

std::string to_json(const SweepReport& report) {
    json out = json::array();
    for (const auto& c : report.cells) {
        json cell{{"p", c.p},
                  {"q", c.q},
                  {"n", c.n},
                  {"predicted", big_to_json(c.predicted)},
                  {"alternative", optional_big(c.alternative)},
                  {"case", std::string(to_string(c.label))},
                  {"linear", optional_big(c.linear)},
                  {"oracle", optional_big(c.oracle)},
                  {"oracle_skipped", c.oracle_skipped},
                  {"computed", big_to_json(c.computed)},
                  {"status", std::string(to_string(c.status))},
                  {"detail", c.detail}};
        if (c.quiver) {
            cell["quiver"] = *c.quiver;
        }
        out.push_back(std::move(cell));
    }
    return dump(out);
}

SweepReport sweep_report_from_json(std::string_view text) {
    const json j = parse_json(text);
    if (!j.is_array()) {
        throw std::invalid_argument("sweep report must be a JSON array");
    }
    SweepReport report;
    try {
        for (const auto& item : j) {
            SweepCell c;
            c.p = item.at("p").get<std::uint32_t>();
            c.q = item.at("q").get<std::uint32_t>();
            c.n = item.at("n").get<std::uint64_t>();
            c.predicted = big_from_json(item.at("predicted"));
            c.alternative = optional_big_from(item, "alternative");
            const auto label = parse_count_case(item.at("case").get<std::string>());
            const auto status = parse_cell_status(item.at("status").get<std::string>());
            if (!label || !status) {
                throw std::invalid_argument("unknown case or status label");
            }
            c.label = *label;
            c.status = *status;
            c.linear = optional_big_from(item, "linear");
            c.oracle = optional_big_from(item, "oracle");
            c.oracle_skipped = item.value("oracle_skipped", false);
            c.computed = big_from_json(item.at("computed"));
            c.detail = item.value("detail", std::string());
            if (item.contains("quiver")) {
                c.quiver = item.at("quiver").get<std::string>();
            }
            report.cells.push_back(std::move(c));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed sweep report: ") + e.what());
    }
    return report;
}

std::string to_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "p,q,n,predicted,case,computed,status\n";
    for (const auto& c : report.cells) {
        os << c.p << ',' << c.q << ',' << c.n << ',' << to_decimal(c.predicted);
        if (c.alternative) {
            os << '|' << to_decimal(*c.alternative);
        }
        os << ',' << to_string(c.label) << ',' << to_decimal(c.computed) << ',' << to_string(c.status) << '\n';
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (text.empty() || text.back() != '\n') {
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

}  // namespace qquiver
