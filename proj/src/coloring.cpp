#include "qquiver/coloring.hpp"

#include "qquiver/errors.hpp"
#include "qquiver/parallel.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

namespace qquiver {

ColoringClass classify(std::span<const Element> top) {
    for (std::size_t i = 1; i < top.size(); ++i) {
        if (top[i] != top[0]) {
            return ColoringClass::nontrivial;
        }
    }
    return ColoringClass::trivial;
}

ColoringSet::ColoringSet(std::string link, std::size_t strands, std::uint64_t quandle_size, BigInt count,
                         std::optional<std::vector<StrandState>> tops)
    : link_(std::move(link)),
      strands_(strands),
      quandle_size_(quandle_size),
      count_(std::move(count)),
      enumerated_(tops.has_value()),
      trivial_count_(quandle_size) {
    if (!tops) {
        return;
    }
    if (BigInt(tops->size()) != count_) {
        throw ConsistencyError("coloring list length disagrees with count " + to_decimal(count_));
    }
    colorings_.reserve(tops->size());
    for (std::size_t i = 0; i < tops->size(); ++i) {
        auto& top = (*tops)[i];
        if (top.size() != strands_) {
            throw std::invalid_argument("coloring has wrong length");
        }
        if (i > 0 && !(colorings_.back().top < top)) {
            throw std::invalid_argument("colorings must be strictly increasing");
        }
        (classify(top) == ColoringClass::trivial ? trivial_ : nontrivial_).push_back(i);
        colorings_.push_back(Coloring{std::move(top), i});
    }
    trivial_count_ = trivial_.size();
}

std::optional<std::size_t> ColoringSet::find(std::span<const Element> top) const {
    auto it = std::lower_bound(colorings_.begin(), colorings_.end(), top,
                               [](const Coloring& c, std::span<const Element> key) {
                                   return std::lexicographical_compare(c.top.begin(), c.top.end(), key.begin(),
                                                                       key.end());
                               });
    if (it == colorings_.end() || !std::equal(it->top.begin(), it->top.end(), top.begin(), top.end())) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - colorings_.begin());
}

std::vector<StrandState> ColoringSet::tops() const {
    std::vector<StrandState> out;
    out.reserve(colorings_.size());
    for (const auto& c : colorings_) {
        out.push_back(c.top);
    }
    return out;
}

namespace {

std::string default_label(const BraidWord& word) {
    return "braid:" + std::to_string(word.strands()) + ":" + word.to_string();
}

struct OracleScan {
    std::vector<StrandState> tops;
    std::uint64_t count = 0;
};

OracleScan oracle_scan(const BraidWord& word, const FiniteQuandle& q, std::uint64_t cap, std::size_t threads,
                       bool keep) {
    const std::size_t p = word.strands();
    const std::uint64_t m = q.size();
    if (m == 0) {
        throw std::invalid_argument("oracle needs a nonempty quandle");
    }
    std::uint64_t candidates = 1;
    for (std::size_t i = 0; i < p; ++i) {
        if (candidates > cap / m) {
            candidates = std::numeric_limits<std::uint64_t>::max();
            break;
        }
        candidates *= m;
    }
    if (candidates > cap) {
        throw CapExceeded("oracle would try " + std::to_string(m) + "^" + std::to_string(p) +
                              " top assignments, cap is " + std::to_string(cap),
                          candidates, cap);
    }
    const bool needs_inverse = std::any_of(word.letters().begin(), word.letters().end(),
                                           [](const Crossing& c) { return !c.positive; });
    if (needs_inverse && !q.has_inverse()) {
        throw std::invalid_argument("negative crossing needs an invertible operation table");
    }
    if (threads == 0) {
        threads = default_thread_count();
    }

    const Element* op = q.table().data();
    const Element* inv = q.inverse_table().data();
    const auto& letters = word.letters();

    // Chunks split the range of the first coordinate, so concatenating the
    // per-chunk hits keeps lexicographic order.
    const std::size_t chunks = chunk_count(m, threads);
    std::vector<OracleScan> partial(chunks);
    parallel_chunks(m, threads, [&](std::size_t chunk, std::size_t first_begin, std::size_t first_end) {
        OracleScan& out = partial[chunk];
        StrandState top(p, 0);
        StrandState state(p);
        top[0] = static_cast<Element>(first_begin);
        for (;;) {
            state = top;
            for (const auto& c : letters) {
                Element& left = state[c.generator - 1];
                Element& right = state[c.generator];
                const Element x = left;
                const Element y = right;
                if (c.positive) {
                    left = y;
                    right = op[x * m + y];
                } else {
                    left = inv[y * m + x];
                    right = x;
                }
            }
            if (state == top) {
                ++out.count;
                if (keep) {
                    out.tops.push_back(top);
                }
            }
            std::size_t pos = p;
            bool advanced = false;
            while (pos-- > 1) {
                if (++top[pos] < m) {
                    advanced = true;
                    break;
                }
                top[pos] = 0;
            }
            if (!advanced && ++top[0] >= first_end) {
                break;
            }
        }
    });

    OracleScan merged;
    for (auto& part : partial) {
        merged.count += part.count;
        merged.tops.insert(merged.tops.end(), std::make_move_iterator(part.tops.begin()),
                           std::make_move_iterator(part.tops.end()));
    }
    return merged;
}

}  // namespace

ColoringSet enumerate_colorings_oracle(const BraidWord& word, const FiniteQuandle& q, std::uint64_t cap,
                                       std::size_t threads, std::string link_label) {
    OracleScan scan = oracle_scan(word, q, cap, threads, true);
    return ColoringSet(link_label.empty() ? default_label(word) : std::move(link_label), word.strands(), q.size(),
                       BigInt(scan.count), std::move(scan.tops));
}

std::uint64_t count_colorings_oracle(const BraidWord& word, const FiniteQuandle& q, std::uint64_t cap,
                                     std::size_t threads) {
    return oracle_scan(word, q, cap, threads, false).count;
}

LinearColoringSystem::LinearColoringSystem(BraidWord word, std::string link_label)
    : word_(std::move(word)),
      label_(link_label.empty() ? default_label(word_) : std::move(link_label)),
      propagation_(propagation_matrix(word_)),
      system_(propagation_ - IntMatrix::identity(word_.strands())),
      snf_(smith_normal_form(system_)) {}

BigInt LinearColoringSystem::count(std::uint64_t n) const {
    return kernel_count_mod(snf_, word_.strands(), n);
}

ColoringSet LinearColoringSystem::colorings(std::uint64_t n, std::uint64_t cap) const {
    const BigInt total = count(n);
    if (total > cap) {
        return ColoringSet(label_, word_.strands(), n, total, std::nullopt);
    }
    auto tops = kernel_enumerate_mod(snf_, word_.strands(), n, cap);
    return ColoringSet(label_, word_.strands(), n, total, std::move(tops));
}

ColoringSet enumerate_colorings_linear(const TorusLinkSpec& spec, std::uint64_t n, std::uint64_t cap) {
    return LinearColoringSystem(torus_braid(spec), spec.to_string()).colorings(n, cap);
}

ColoringSet enumerate_colorings_linear(const BraidWord& word, std::uint64_t n, std::uint64_t cap) {
    return LinearColoringSystem(word).colorings(n, cap);
}

}  // namespace qquiver
