#include "qquiver/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qquiver {

BraidWord::BraidWord(std::size_t strands, std::vector<Crossing> letters)
    : strands_(strands), letters_(std::move(letters)) {
    if (strands_ < 1) {
        throw std::invalid_argument("braid needs at least one strand");
    }
    for (const auto& c : letters_) {
        if (c.generator < 1 || c.generator >= strands_) {
            throw std::invalid_argument("generator s" + std::to_string(c.generator) + " invalid on " +
                                        std::to_string(strands_) + " strands");
        }
    }
}

BraidWord BraidWord::concat(const BraidWord& tail) const {
    if (tail.strands_ != strands_) {
        throw std::invalid_argument("concat: strand counts differ");
    }
    std::vector<Crossing> letters = letters_;
    letters.insert(letters.end(), tail.letters_.begin(), tail.letters_.end());
    return BraidWord(strands_, std::move(letters));
}

std::string BraidWord::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        os << (i ? " " : "") << (letters_[i].positive ? "" : "-") << 's' << letters_[i].generator;
    }
    return os.str();
}

std::string TorusLinkSpec::to_string() const {
    return "torus:" + std::to_string(p) + "," + std::to_string(q);
}

BraidWord torus_braid(const TorusLinkSpec& spec) {
    if (spec.p < 2) {
        throw std::invalid_argument("torus braid needs p >= 2, got " + std::to_string(spec.p));
    }
    std::vector<Crossing> letters;
    letters.reserve(static_cast<std::size_t>(spec.q) * (spec.p - 1));
    for (std::uint32_t k = 0; k < spec.q; ++k) {
        for (std::uint32_t i = 1; i < spec.p; ++i) {
            letters.push_back({i, true});
        }
    }
    return BraidWord(spec.p, std::move(letters));
}

namespace {

std::uint32_t parse_uint(std::string_view text, std::string_view what) {
    std::uint32_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw std::invalid_argument("invalid " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

BraidWord parse_braid_word(std::string_view text, std::optional<std::size_t> strands) {
    std::vector<Crossing> letters;
    std::string token;
    std::istringstream is{std::string(text)};
    std::uint32_t max_generator = 0;
    while (is >> token) {
        std::string_view t = token;
        while (!t.empty() && t.back() == ',') {
            t.remove_suffix(1);
        }
        if (t.empty()) {
            continue;
        }
        Crossing c;
        if (t.front() == '-') {
            c.positive = false;
            t.remove_prefix(1);
        }
        if (t.empty() || (t.front() != 's' && t.front() != 'S')) {
            throw std::invalid_argument("braid letter must look like s<i> or -s<i>: '" + token + "'");
        }
        t.remove_prefix(1);
        c.generator = parse_uint(t, "generator index");
        if (c.generator == 0) {
            throw std::invalid_argument("generator indices start at 1: '" + token + "'");
        }
        max_generator = std::max(max_generator, c.generator);
        letters.push_back(c);
    }
    const std::size_t n = strands.value_or(static_cast<std::size_t>(max_generator) + 1);
    return BraidWord(n, std::move(letters));
}

LinkInput parse_link(std::string_view text, std::optional<std::size_t> strands) {
    text = trim(text);
    constexpr std::string_view prefix = "torus:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string_view rest = text.substr(prefix.size());
        const auto comma = rest.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("torus link must be written torus:p,q");
        }
        TorusLinkSpec spec{parse_uint(trim(rest.substr(0, comma)), "torus p"),
                           parse_uint(trim(rest.substr(comma + 1)), "torus q")};
        if (strands && *strands != spec.p) {
            throw std::invalid_argument("--strands conflicts with torus p");
        }
        return LinkInput{torus_braid(spec), spec, spec.to_string()};
    }
    BraidWord word = parse_braid_word(text, strands);
    return LinkInput{word, std::nullopt, "braid:" + std::to_string(word.strands()) + ":" + word.to_string()};
}

namespace {

void apply_crossing(const Crossing& c, const FiniteQuandle& q, StrandState& state) {
    Element& left = state[c.generator - 1];
    Element& right = state[c.generator];
    const Element x = left;
    const Element y = right;
    if (c.positive) {
        left = y;
        right = q.op(x, y);
    } else {
        left = q.inv_op(y, x);
        right = x;
    }
}

}  // namespace

void propagate_in_place(const BraidWord& word, const FiniteQuandle& q, StrandState& state) {
    for (const auto& c : word.letters()) {
        apply_crossing(c, q, state);
    }
}

PropagationResult propagate(const BraidWord& word, const FiniteQuandle& q, const StrandState& top) {
    if (top.size() != word.strands()) {
        throw std::invalid_argument("state has " + std::to_string(top.size()) + " colors, braid has " +
                                    std::to_string(word.strands()) + " strands");
    }
    for (Element c : top) {
        if (!q.contains(c)) {
            throw std::domain_error("color " + std::to_string(c) + " not in quandle of size " +
                                    std::to_string(q.size()));
        }
    }
    const bool needs_inverse = std::any_of(word.letters().begin(), word.letters().end(),
                                           [](const Crossing& c) { return !c.positive; });
    if (needs_inverse && !q.has_inverse()) {
        throw std::invalid_argument("negative crossing needs an invertible operation table");
    }

    PropagationResult result;
    result.sections.reserve(word.length() + 1);
    result.sections.push_back(top);
    StrandState state = top;
    for (const auto& c : word.letters()) {
        apply_crossing(c, q, state);
        result.sections.push_back(state);
    }
    result.bottom = std::move(state);
    return result;
}

IntMatrix propagation_matrix(const BraidWord& word) {
    const std::size_t p = word.strands();
    IntMatrix m = IntMatrix::identity(p);
    for (const auto& c : word.letters()) {
        const std::size_t a = c.generator - 1;
        const std::size_t b = c.generator;
        for (std::size_t j = 0; j < p; ++j) {
            const BigInt x = m(a, j);
            const BigInt y = m(b, j);
            if (c.positive) {
                m(a, j) = y;
                m(b, j) = 2 * y - x;
            } else {
                m(a, j) = 2 * x - y;
                m(b, j) = x;
            }
        }
    }
    return m;
}

}  // namespace qquiver
