#pragma once

// DOT, JSON and CSV serialization. Every ordering is canonical (sorted), so
// identical inputs give byte-identical files regardless of thread count.

#include "qquiver/counting.hpp"
#include "qquiver/quiver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qquiver {

enum class ExportFormat { dot, json, csv };

std::string_view to_string(ExportFormat f);
std::optional<ExportFormat> parse_export_format(std::string_view text);

struct ExportOptions {
    ExportFormat format = ExportFormat::json;
    bool collapse_blocks = false;  // dot only
    bool include_loops = true;
    std::string output_path;       // empty: standard output

    /// Throws std::invalid_argument when collapse_blocks is set for a
    /// non-dot format.
    void validate() const;
};

/// A computed quiver together with what it was computed for.
struct QuiverReport {
    std::string link;  // empty: no params object
    std::optional<std::uint32_t> p;
    std::optional<std::uint32_t> q;
    std::uint64_t n = 0;
    std::string endo_source;

    BigInt count = 0;
    std::optional<CountCase> count_case;
    WeightedQuiver quiver;  // vertex labels become the "colorings" array

    std::optional<std::string> predicted;  // QuiverForm::to_string()
    std::optional<IsoVerdict> verdict;

    bool operator==(const QuiverReport&) const = default;
};

std::string to_dot(const WeightedQuiver& q, const ExportOptions& opts = {}, std::string_view title = "quiver");

std::string to_json(const QuiverReport& report);
std::string to_json(const SweepReport& report);

/// Inverses of to_json. Throw std::invalid_argument on malformed input.
QuiverReport quiver_report_from_json(std::string_view text);
SweepReport sweep_report_from_json(std::string_view text);

/// Header `p,q,n,predicted,case,computed,status`. Ambiguous rows write both
/// candidates as "general|tabulated" in the predicted column; computed is the
/// value the computation selected.
std::string to_csv(const SweepReport& report);

/// Writes `text` (newline-terminated) to `path`; throws std::runtime_error
/// if the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qquiver
