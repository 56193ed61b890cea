#include "qquiver/quiver.hpp"

#include "qquiver/errors.hpp"
#include "qquiver/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qquiver {

namespace {

std::string format_state(const StrandState& s) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << (i ? "," : "") << s[i];
    }
    os << ')';
    return os.str();
}

void normalize_row(std::vector<WeightedEdge>& row) {
    std::sort(row.begin(), row.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) { return a.target < b.target; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (out > 0 && row[out - 1].target == row[i].target) {
            row[out - 1].weight += row[i].weight;
        } else {
            row[out++] = row[i];
        }
    }
    row.resize(out);
    row.erase(std::remove_if(row.begin(), row.end(), [](const WeightedEdge& e) { return e.weight == 0; }),
              row.end());
}

std::uint64_t to_u64(const BigInt& v, const char* what) {
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    }
    return v.convert_to<std::uint64_t>();
}

}  // namespace

WeightedQuiver WeightedQuiver::from_rows(std::vector<std::vector<WeightedEdge>> rows) {
    WeightedQuiver q;
    q.rows_ = std::move(rows);
    for (auto& row : q.rows_) {
        normalize_row(row);
        if (!row.empty() && row.back().target >= q.rows_.size()) {
            throw std::out_of_range("edge target " + std::to_string(row.back().target) + " out of range");
        }
    }
    return q;
}

std::uint64_t WeightedQuiver::weight(std::size_t f, std::size_t g) const {
    const auto& r = rows_.at(f);
    auto it = std::lower_bound(r.begin(), r.end(), g,
                               [](const WeightedEdge& e, std::size_t t) { return e.target < t; });
    return (it != r.end() && it->target == g) ? it->weight : 0;
}

std::uint64_t WeightedQuiver::row_sum(std::size_t f) const {
    std::uint64_t s = 0;
    for (const auto& e : rows_.at(f)) {
        s += e.weight;
    }
    return s;
}

std::uint64_t WeightedQuiver::total_weight() const {
    std::uint64_t s = 0;
    for (std::size_t f = 0; f < rows_.size(); ++f) {
        s += row_sum(f);
    }
    return s;
}

std::size_t WeightedQuiver::edge_count() const {
    std::size_t s = 0;
    for (const auto& r : rows_) {
        s += r.size();
    }
    return s;
}

WeightedQuiver WeightedQuiver::transpose() const {
    std::vector<std::vector<WeightedEdge>> t(rows_.size());
    for (std::size_t f = 0; f < rows_.size(); ++f) {
        for (const auto& e : rows_[f]) {
            t[e.target].push_back({f, e.weight});
        }
    }
    // Sources are visited in increasing order, so rows are already sorted.
    WeightedQuiver out;
    out.rows_ = std::move(t);
    return out;
}

WeightedQuiver WeightedQuiver::relabeled(const std::vector<std::size_t>& perm) const {
    if (perm.size() != rows_.size()) {
        throw std::invalid_argument("relabeled: permutation has wrong size");
    }
    std::vector<bool> hit(perm.size());
    for (auto v : perm) {
        if (v >= perm.size() || hit[v]) {
            throw std::invalid_argument("relabeled: not a permutation");
        }
        hit[v] = true;
    }
    std::vector<std::vector<WeightedEdge>> rows(rows_.size());
    for (std::size_t f = 0; f < rows_.size(); ++f) {
        for (const auto& e : rows_[f]) {
            rows[perm[f]].push_back({perm[e.target], e.weight});
        }
    }
    WeightedQuiver out = from_rows(std::move(rows));
    if (labels_) {
        std::vector<StrandState> labels(labels_->size());
        for (std::size_t f = 0; f < labels.size(); ++f) {
            labels[perm[f]] = (*labels_)[f];
        }
        out.labels_ = std::move(labels);
    }
    return out;
}

void WeightedQuiver::set_labels(std::vector<StrandState> labels) {
    if (labels.size() != rows_.size()) {
        throw std::invalid_argument("label count differs from vertex count");
    }
    labels_ = std::move(labels);
}

std::string WeightedQuiver::vertex_name(std::size_t v) const {
    if (labels_) {
        return "#" + std::to_string(v) + format_state(labels_->at(v));
    }
    return "#" + std::to_string(v);
}

std::string_view to_string(EndoSource s) { return s == EndoSource::affine ? "affine" : "brute"; }

std::optional<EndoSource> parse_endo_source(std::string_view text) {
    if (text == "affine") {
        return EndoSource::affine;
    }
    if (text == "brute") {
        return EndoSource::brute;
    }
    return std::nullopt;
}

std::vector<Endomorphism> dihedral_endomorphisms(std::uint64_t n, EndoSource source, std::uint64_t brute_cap) {
    if (source == EndoSource::affine) {
        return affine_endomorphisms(n);
    }
    return brute_force_endomorphisms(DihedralQuandle(n).table(), brute_cap);
}

WeightedQuiver build_quiver(const ColoringSet& colorings, const std::vector<Endomorphism>& endos,
                            std::size_t threads) {
    if (!colorings.enumerated()) {
        throw std::invalid_argument("build_quiver needs an enumerated coloring set (count " +
                                    to_decimal(colorings.count()) + " was above the enumeration cap)");
    }
    for (const auto& phi : endos) {
        if (phi.domain_size() != colorings.modulus()) {
            throw std::invalid_argument("endomorphism " + phi.to_string() + " acts on a quandle of size " +
                                        std::to_string(phi.domain_size()) + ", colorings use " +
                                        std::to_string(colorings.modulus()));
        }
    }
    if (threads == 0) {
        threads = default_thread_count();
    }

    const std::size_t count = colorings.size();
    std::vector<std::vector<WeightedEdge>> rows(count);
    parallel_chunks(count, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        StrandState image(colorings.strands());
        std::vector<std::size_t> targets;
        targets.reserve(endos.size());
        for (std::size_t f = begin; f < end; ++f) {
            const StrandState& top = colorings[f].top;
            targets.clear();
            for (const auto& phi : endos) {
                for (std::size_t i = 0; i < top.size(); ++i) {
                    image[i] = phi(top[i]);
                }
                const auto g = colorings.find(image);
                if (!g) {
                    throw ConsistencyError("endomorphism " + phi.to_string() + " maps coloring " +
                                           format_state(top) + " to " + format_state(image) +
                                           ", which is not a coloring");
                }
                targets.push_back(*g);
            }
            std::sort(targets.begin(), targets.end());
            auto& row = rows[f];
            for (std::size_t i = 0; i < targets.size();) {
                std::size_t j = i;
                while (j < targets.size() && targets[j] == targets[i]) {
                    ++j;
                }
                row.push_back({targets[i], j - i});
                i = j;
            }
        }
    });

    WeightedQuiver q = WeightedQuiver::from_rows(std::move(rows));
    q.set_labels(colorings.tops());
    for (std::size_t f = 0; f < count; ++f) {
        if (q.row_sum(f) != endos.size()) {
            throw ConsistencyError("row " + q.vertex_name(f) + " sums to " + std::to_string(q.row_sum(f)) +
                                   ", expected " + std::to_string(endos.size()));
        }
    }
    return q;
}

QuiverInvariants check_quiver_invariants(const WeightedQuiver& q, const ColoringSet& colorings,
                                         std::uint64_t endo_count,
                                         std::optional<std::uint64_t> trivial_weight) {
    QuiverInvariants out;
    auto note = [&out](std::string text) {
        if (out.witness.empty()) {
            out.witness = std::move(text);
        }
    };
    if (q.size() != colorings.size()) {
        out.row_sum = false;
        note("quiver has " + std::to_string(q.size()) + " vertices, coloring set " +
             std::to_string(colorings.size()));
        return out;
    }
    for (std::size_t f = 0; f < q.size(); ++f) {
        if (q.row_sum(f) != endo_count) {
            out.row_sum = false;
            note("row " + q.vertex_name(f) + " sums to " + std::to_string(q.row_sum(f)));
        }
    }
    const auto& trivial = colorings.trivial_indices();
    for (auto f : trivial) {
        if (trivial_weight) {
            for (auto g : trivial) {
                if (q.weight(f, g) != *trivial_weight) {
                    out.trivial_block = false;
                    note("trivial pair " + q.vertex_name(f) + " -> " + q.vertex_name(g) + " has weight " +
                         std::to_string(q.weight(f, g)));
                }
            }
        }
        for (const auto& e : q.row(f)) {
            if (!colorings[e.target].trivial()) {
                out.no_trivial_to_nontrivial = false;
                note("edge from trivial " + q.vertex_name(f) + " to nontrivial " + q.vertex_name(e.target));
            }
        }
    }
    return out;
}

std::uint64_t QuiverForm::vertex_count() const {
    std::uint64_t v = 0;
    for (const auto& f : families) {
        v += f.size * f.multiplicity;
    }
    return v;
}

std::uint64_t QuiverForm::block_count() const {
    std::uint64_t b = 0;
    for (const auto& f : families) {
        b += f.multiplicity;
    }
    return b;
}

std::string QuiverForm::to_string() const {
    if (families.empty()) {
        return "(empty)";
    }
    auto family = [this](std::size_t i) {
        const auto& f = families[i];
        std::string s = "(K_" + std::to_string(f.size) + "," + std::to_string(f.weight) + ")";
        return f.multiplicity == 1 ? s : std::to_string(f.multiplicity) + "*" + s;
    };
    // Common shape: everything points into family 0 with one weight.
    const bool star = families[0].multiplicity == 1 && cross.size() + 1 == families.size() &&
                      std::all_of(cross.begin(), cross.end(), [this](const CrossEdge& e) {
                          return e.target == 0 && e.source != 0 && e.weight == cross.front().weight;
                      });
    std::ostringstream os;
    if (families.size() == 1 && cross.empty()) {
        return family(0);
    }
    if (star) {
        os << family(0) << " <-" << cross.front().weight << "- ";
        for (std::size_t i = 1; i < families.size(); ++i) {
            os << (i > 1 ? " + " : "") << family(i);
        }
        return os.str();
    }
    for (std::size_t i = 0; i < families.size(); ++i) {
        os << (i ? " + " : "") << "F" << i << "=" << family(i);
    }
    for (const auto& e : cross) {
        os << "; F" << e.source << "->F" << e.target << ":" << e.weight;
    }
    return os.str();
}

QuiverForm complete_form(std::uint64_t s, std::uint64_t w) {
    if (s == 0 || w == 0) {
        throw std::invalid_argument("complete_form needs positive size and weight");
    }
    return QuiverForm{{BlockFamily{s, w, 1}}, {}};
}

QuiverForm join_form(const QuiverForm& g1, const QuiverForm& g2, std::uint64_t d) {
    if (d == 0) {
        throw std::invalid_argument("join_form needs a positive cross weight");
    }
    if (g2.empty()) {
        return g1;
    }
    if (g1.empty()) {
        return g2;
    }
    QuiverForm out = g1;
    const std::size_t offset = g1.families.size();
    out.families.insert(out.families.end(), g2.families.begin(), g2.families.end());
    for (const auto& e : g2.cross) {
        out.cross.push_back({e.source + offset, e.target + offset, e.weight});
    }
    for (std::size_t i = 0; i < g2.families.size(); ++i) {
        for (std::size_t j = 0; j < g1.families.size(); ++j) {
            out.cross.push_back({i + offset, j, d});
        }
    }
    return out;
}

QuiverForm disjoint_union(const QuiverForm& g, std::uint64_t m) {
    if (!g.cross.empty()) {
        throw std::invalid_argument("disjoint_union: form with cross edges cannot be replicated");
    }
    if (m == 0) {
        return {};
    }
    QuiverForm out = g;
    for (auto& f : out.families) {
        f.multiplicity *= m;
    }
    return out;
}

std::optional<QuiverForm> quiver_form_for_count(std::uint32_t p, std::uint64_t n, const BigInt& count) {
    if (p < 2 || n < 2) {
        return std::nullopt;
    }
    const QuiverForm trivial = complete_form(n, n);
    if (count == n) {
        return trivial;
    }
    if (n % p == 0 && count == BigInt(n) * p) {
        const std::uint64_t d = n / p;
        return join_form(trivial, complete_form((p - 1) * n, d), d);
    }
    BigInt two_pow = 1;
    for (std::uint32_t i = 1; i < p; ++i) {
        two_pow *= 2;
    }
    if (n % 2 == 0 && count == two_pow * n) {
        const std::uint64_t d = n / 2;
        const std::uint64_t m = to_u64(two_pow - 1, "block multiplicity");
        return join_form(trivial, disjoint_union(complete_form(n, d), m), d);
    }
    BigInt all = 1;
    for (std::uint32_t i = 0; i < p; ++i) {
        all *= n;
    }
    if (is_prime(n) && count == all) {
        const BigInt m = (all - n) / (BigInt(n) * (n - 1));
        return join_form(trivial, disjoint_union(complete_form(n * (n - 1), 1), to_u64(m, "block multiplicity")),
                         1);
    }
    return std::nullopt;
}

QuiverForm predict_quiver(std::uint32_t p, std::uint32_t q, std::uint64_t n) {
    const CountPrediction pred = predict_count(p, q, n);
    if (pred.ambiguous()) {
        throw AmbiguousPrediction("T(" + std::to_string(p) + "," + std::to_string(q) + ") over R_" +
                                  std::to_string(n) + " has two candidate counts (" + to_decimal(pred.count) +
                                  ", " + to_decimal(*pred.alternative) + "); compute the quiver instead");
    }
    if (pred.regime == CountCase::free && !is_prime(n)) {
        throw UnsupportedParameters("no closed-form quiver for N = n^p with composite n = " + std::to_string(n));
    }
    auto form = quiver_form_for_count(p, n, pred.count);
    if (!form) {
        throw ConsistencyError("predicted count " + to_decimal(pred.count) + " has no quiver shape");
    }
    return *form;
}

WeightedQuiver realize(const QuiverForm& form) {
    const std::uint64_t total = form.vertex_count();
    std::vector<std::size_t> start(form.families.size() + 1, 0);
    for (std::size_t i = 0; i < form.families.size(); ++i) {
        const auto& f = form.families[i];
        if (f.size == 0 || f.weight == 0) {
            throw std::invalid_argument("realize: block sizes and weights must be positive");
        }
        start[i + 1] = start[i] + f.size * f.multiplicity;
    }
    std::vector<std::vector<WeightedEdge>> rows(total);
    for (std::size_t i = 0; i < form.families.size(); ++i) {
        const auto& f = form.families[i];
        for (std::uint64_t c = 0; c < f.multiplicity; ++c) {
            const std::size_t base = start[i] + c * f.size;
            for (std::size_t u = base; u < base + f.size; ++u) {
                for (std::size_t v = base; v < base + f.size; ++v) {
                    rows[u].push_back({v, f.weight});
                }
            }
        }
    }
    for (const auto& e : form.cross) {
        if (e.source >= form.families.size() || e.target >= form.families.size() || e.source == e.target) {
            throw std::invalid_argument("realize: invalid cross edge");
        }
        for (std::size_t u = start[e.source]; u < start[e.source + 1]; ++u) {
            for (std::size_t v = start[e.target]; v < start[e.target + 1]; ++v) {
                rows[u].push_back({v, e.weight});
            }
        }
    }
    return WeightedQuiver::from_rows(std::move(rows));
}

BlockSummary detect_blocks(const WeightedQuiver& q) {
    const std::size_t n = q.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t f = 0; f < n; ++f) {
        for (const auto& e : q.row(f)) {
            if (e.target != f && q.weight(e.target, f) > 0) {
                const auto a = find(f);
                const auto b = find(e.target);
                if (a != b) {
                    parent[std::max(a, b)] = std::min(a, b);
                }
            }
        }
    }

    BlockSummary out;
    std::vector<std::size_t> block_of(n);
    std::map<std::size_t, std::size_t> root_to_block;
    for (std::size_t v = 0; v < n; ++v) {
        const auto r = find(v);
        auto [it, inserted] = root_to_block.emplace(r, out.blocks.size());
        if (inserted) {
            out.blocks.emplace_back();
        }
        block_of[v] = it->second;
        out.blocks[it->second].vertices.push_back(v);
    }

    struct Agg {
        std::uint64_t pairs = 0;
        std::uint64_t total = 0;
        std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
        std::uint64_t hi = 0;
    };
    std::map<std::pair<std::size_t, std::size_t>, Agg> agg;
    for (std::size_t f = 0; f < n; ++f) {
        for (const auto& e : q.row(f)) {
            auto& a = agg[{block_of[f], block_of[e.target]}];
            ++a.pairs;
            a.total += e.weight;
            a.lo = std::min(a.lo, e.weight);
            a.hi = std::max(a.hi, e.weight);
        }
    }
    for (std::size_t b = 0; b < out.blocks.size(); ++b) {
        auto it = agg.find({b, b});
        const std::uint64_t s = out.blocks[b].vertices.size();
        if (it != agg.end() && it->second.pairs == s * s && it->second.lo == it->second.hi) {
            out.blocks[b].weight = it->second.lo;
        }
    }
    for (const auto& [key, a] : agg) {
        if (key.first == key.second) {
            continue;
        }
        BlockEdge e;
        e.source = key.first;
        e.target = key.second;
        e.total = a.total;
        const std::uint64_t full = out.blocks[key.first].vertices.size() * out.blocks[key.second].vertices.size();
        if (a.pairs == full && a.lo == a.hi) {
            e.weight = a.lo;
        }
        out.edges.push_back(e);
    }
    return out;
}

void attach_quiver_checks(SweepReport& report, const QuiverCheckOptions& options) {
    std::optional<std::pair<std::uint32_t, std::uint32_t>> current;
    std::optional<LinearColoringSystem> system;
    for (auto& cell : report.cells) {
        if (cell.computed > options.max_vertices) {
            cell.quiver = "too-large";
            continue;
        }
        std::optional<QuiverForm> form;
        if (cell.label == CountCase::ambiguous) {
            form = quiver_form_for_count(cell.p, cell.n, cell.computed);
        } else {
            try {
                form = predict_quiver(cell.p, cell.q, cell.n);
            } catch (const UnsupportedParameters&) {
            }
        }

        if (!current || current->first != cell.p || current->second != cell.q) {
            const TorusLinkSpec spec{cell.p, cell.q};
            system.emplace(torus_braid(spec), spec.to_string());
            current = std::make_pair(cell.p, cell.q);
        }
        const ColoringSet colorings = system->colorings(cell.n, options.max_vertices);
        const auto endos = affine_endomorphisms(cell.n);
        const WeightedQuiver built = build_quiver(colorings, endos, options.threads);
        const auto inv = check_quiver_invariants(built, colorings, endos.size(), cell.n);
        if (!inv.all()) {
            cell.quiver = "invariant-violation";
            cell.status = CellStatus::mismatch;
            cell.detail += (cell.detail.empty() ? "" : "; ") + inv.witness;
            continue;
        }
        if (!form) {
            cell.quiver = "no-prediction";
            continue;
        }
        const IsoResult iso = isomorphic(built, realize(*form), options.iso_budget);
        switch (iso.verdict) {
            case IsoVerdict::isomorphic:
                cell.quiver = "isomorphic";
                break;
            case IsoVerdict::not_isomorphic:
                cell.quiver = "not-isomorphic";
                cell.status = CellStatus::mismatch;
                cell.detail += (cell.detail.empty() ? "" : "; ") + std::string("quiver differs from ") +
                               form->to_string() + ": " + iso.reason;
                break;
            case IsoVerdict::undecided:
                cell.quiver = "undecided";
                break;
        }
    }
}

}  // namespace qquiver
