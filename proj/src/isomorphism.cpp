#include "qquiver/quiver.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace qquiver {

std::string_view to_string(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::isomorphic:
            return "isomorphic";
        case IsoVerdict::not_isomorphic:
            return "not-isomorphic";
        case IsoVerdict::undecided:
            return "undecided";
    }
    return "undecided";
}

namespace {

constexpr std::size_t kUnmapped = std::numeric_limits<std::size_t>::max();

// Colour refinement run on A and B together, so equal colours mean the
// same thing on both sides. Vertex v of B is index size + v.
class JointRefinement {
public:
    JointRefinement(const WeightedQuiver& a, const WeightedQuiver& b)
        : n_(a.size()), out_{&a, &b}, in_{a.transpose(), b.transpose()} {}

    std::vector<std::size_t> run() {
        std::vector<std::vector<std::uint64_t>> keys(2 * n_);
        for (std::size_t v = 0; v < 2 * n_; ++v) {
            keys[v] = {graph(v).weight(local(v), local(v))};
        }
        std::size_t classes = assign(keys);
        for (;;) {
            for (std::size_t v = 0; v < 2 * n_; ++v) {
                keys[v] = signature(v);
            }
            const std::size_t next = assign(keys);
            if (next == classes) {
                return colour_;
            }
            classes = next;
        }
    }

private:
    const WeightedQuiver& graph(std::size_t v) const { return *out_[v >= n_]; }
    const WeightedQuiver& reverse(std::size_t v) const { return in_[v >= n_]; }
    std::size_t local(std::size_t v) const { return v >= n_ ? v - n_ : v; }
    std::size_t offset(std::size_t v) const { return v >= n_ ? n_ : 0; }

    std::vector<std::uint64_t> signature(std::size_t v) const {
        std::vector<std::uint64_t> key{colour_[v]};
        for (const WeightedQuiver* g : {&graph(v), &reverse(v)}) {
            std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
            for (const auto& e : g->row(local(v))) {
                if (e.target != local(v)) {
                    pairs.emplace_back(colour_[e.target + offset(v)], e.weight);
                }
            }
            std::sort(pairs.begin(), pairs.end());
            key.push_back(pairs.size());
            for (const auto& [c, w] : pairs) {
                key.push_back(c);
                key.push_back(w);
            }
        }
        return key;
    }

    std::size_t assign(const std::vector<std::vector<std::uint64_t>>& keys) {
        std::map<std::vector<std::uint64_t>, std::size_t> ids;
        for (const auto& k : keys) {
            ids.emplace(k, 0);
        }
        std::size_t next = 0;
        for (auto& [k, id] : ids) {
            id = next++;
        }
        colour_.resize(keys.size());
        for (std::size_t v = 0; v < keys.size(); ++v) {
            colour_[v] = ids.at(keys[v]);
        }
        return ids.size();
    }

    std::size_t n_;
    const WeightedQuiver* out_[2];
    WeightedQuiver in_[2];
    std::vector<std::size_t> colour_;
};

class Matcher {
public:
    Matcher(const WeightedQuiver& a, const WeightedQuiver& b, std::vector<std::size_t> colour,
            std::uint64_t budget)
        : a_(a), b_(b), a_in_(a.transpose()), b_in_(b.transpose()), n_(a.size()), colour_(std::move(colour)),
          budget_(budget), map_(n_, kUnmapped), inverse_(n_, kUnmapped) {
        std::size_t max_colour = 0;
        for (auto c : colour_) {
            max_colour = std::max(max_colour, c);
        }
        by_colour_.resize(max_colour + 1);
        for (std::size_t u = 0; u < n_; ++u) {
            by_colour_[colour_[n_ + u]].push_back(u);
        }
        build_order();
    }

    IsoResult run() {
        IsoResult result;
        std::vector<std::size_t> next(n_ + 1, 0);
        std::size_t k = 0;
        while (k < n_) {
            const std::size_t v = order_[k];
            const auto& candidates = by_colour_[colour_[v]];
            bool placed = false;
            while (next[k] < candidates.size()) {
                const std::size_t u = candidates[next[k]++];
                if (inverse_[u] != kUnmapped) {
                    continue;
                }
                if (++result.expansions > budget_) {
                    result.verdict = IsoVerdict::undecided;
                    result.reason = "search budget of " + std::to_string(budget_) + " expansions exhausted";
                    return result;
                }
                if (consistent(v, u)) {
                    map_[v] = u;
                    inverse_[u] = v;
                    placed = true;
                    break;
                }
            }
            if (placed) {
                next[++k] = 0;
                continue;
            }
            next[k] = 0;
            if (k == 0) {
                result.verdict = IsoVerdict::not_isomorphic;
                result.reason = "no bijection survives backtracking";
                return result;
            }
            --k;
            inverse_[map_[order_[k]]] = kUnmapped;
            map_[order_[k]] = kUnmapped;
        }
        result.verdict = IsoVerdict::isomorphic;
        result.mapping = map_;
        return result;
    }

private:
    // Undirected BFS, restarting from the unvisited vertex in the smallest
    // colour class, so each new vertex is tied to already placed ones.
    void build_order() {
        std::vector<bool> seen(n_);
        std::vector<std::size_t> starts(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            starts[v] = v;
        }
        std::stable_sort(starts.begin(), starts.end(), [this](std::size_t x, std::size_t y) {
            return by_colour_[colour_[x]].size() < by_colour_[colour_[y]].size();
        });
        std::deque<std::size_t> queue;
        for (auto s : starts) {
            if (seen[s]) {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            while (!queue.empty()) {
                const auto v = queue.front();
                queue.pop_front();
                order_.push_back(v);
                for (const WeightedQuiver* g : {&a_, static_cast<const WeightedQuiver*>(&a_in_)}) {
                    for (const auto& e : g->row(v)) {
                        if (!seen[e.target]) {
                            seen[e.target] = true;
                            queue.push_back(e.target);
                        }
                    }
                }
            }
        }
    }

    // Checks v -> u against every already mapped vertex, in both directions.
    bool consistent(std::size_t v, std::size_t u) const {
        if (a_.weight(v, v) != b_.weight(u, u)) {
            return false;
        }
        return side_consistent(a_.row(v), b_, b_.row(u), v, u) &&
               side_consistent(a_in_.row(v), b_in_, b_in_.row(u), v, u);
    }

    bool side_consistent(const std::vector<WeightedEdge>& a_row, const WeightedQuiver& b_graph,
                         const std::vector<WeightedEdge>& b_row, std::size_t v, std::size_t u) const {
        std::size_t mapped_a = 0;
        for (const auto& e : a_row) {
            if (e.target == v || map_[e.target] == kUnmapped) {
                continue;
            }
            if (b_graph.weight(u, map_[e.target]) != e.weight) {
                return false;
            }
            ++mapped_a;
        }
        std::size_t mapped_b = 0;
        for (const auto& e : b_row) {
            if (e.target != u && inverse_[e.target] != kUnmapped) {
                ++mapped_b;
            }
        }
        return mapped_a == mapped_b;
    }

    const WeightedQuiver& a_;
    const WeightedQuiver& b_;
    WeightedQuiver a_in_;
    WeightedQuiver b_in_;
    std::size_t n_;
    std::vector<std::size_t> colour_;
    std::uint64_t budget_;
    std::vector<std::size_t> map_;
    std::vector<std::size_t> inverse_;
    std::vector<std::vector<std::size_t>> by_colour_;
    std::vector<std::size_t> order_;
};

}  // namespace

IsoResult isomorphic(const WeightedQuiver& a, const WeightedQuiver& b, std::uint64_t budget) {
    IsoResult result;
    if (a.size() != b.size()) {
        result.verdict = IsoVerdict::not_isomorphic;
        result.reason = "vertex counts differ (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")";
        return result;
    }
    if (a.edge_count() != b.edge_count() || a.total_weight() != b.total_weight()) {
        result.verdict = IsoVerdict::not_isomorphic;
        result.reason = "edge counts or total weights differ";
        return result;
    }
    if (a.size() == 0) {
        result.verdict = IsoVerdict::isomorphic;
        return result;
    }

    const auto colour = JointRefinement(a, b).run();
    const std::size_t n = a.size();
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> histogram;
    for (std::size_t v = 0; v < n; ++v) {
        ++histogram[colour[v]].first;
        ++histogram[colour[n + v]].second;
    }
    for (const auto& [c, counts] : histogram) {
        if (counts.first != counts.second) {
            result.verdict = IsoVerdict::not_isomorphic;
            result.reason = "refinement class " + std::to_string(c) + " has " + std::to_string(counts.first) +
                            " vertices in the first quiver and " + std::to_string(counts.second) +
                            " in the second";
            return result;
        }
    }

    result = Matcher(a, b, colour, budget).run();
    if (result.verdict == IsoVerdict::isomorphic) {
        // Final full check of the bijection.
        for (std::size_t v = 0; v < n; ++v) {
            const auto& ra = a.row(v);
            if (ra.size() != b.row(result.mapping[v]).size()) {
                result.verdict = IsoVerdict::not_isomorphic;
                result.reason = "internal: bijection failed final check";
                result.mapping.clear();
                return result;
            }
            for (const auto& e : ra) {
                if (b.weight(result.mapping[v], result.mapping[e.target]) != e.weight) {
                    result.verdict = IsoVerdict::not_isomorphic;
                    result.reason = "internal: bijection failed final check";
                    result.mapping.clear();
                    return result;
                }
            }
        }
    }
    return result;
}

}  // namespace qquiver
