#include "qquiver/quandle.hpp"

#include "qquiver/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qquiver {

FiniteQuandle::FiniteQuandle(std::size_t size, std::vector<Element> table)
    : size_(size), table_(std::move(table)) {
    if (table_.size() != size_ * size_) {
        throw std::invalid_argument("FiniteQuandle: table has " + std::to_string(table_.size()) +
                                    " entries, expected " + std::to_string(size_ * size_));
    }
    for (Element v : table_) {
        if (v >= size_) {
            throw std::domain_error("FiniteQuandle: table entry " + std::to_string(v) + " out of range");
        }
    }
    build_inverse();
}

std::size_t FiniteQuandle::index(Element x, Element y) const {
    if (x >= size_ || y >= size_) {
        throw std::domain_error("element out of range for quandle of size " + std::to_string(size_));
    }
    return static_cast<std::size_t>(x) * size_ + y;
}

void FiniteQuandle::build_inverse() {
    std::vector<Element> inverse(size_ * size_);
    std::vector<bool> seen(size_);
    for (std::size_t y = 0; y < size_; ++y) {
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t z = 0; z < size_; ++z) {
            const Element x = table_[z * size_ + y];
            if (seen[x]) {
                inverse_.clear();
                return;
            }
            seen[x] = true;
            inverse[x * size_ + y] = static_cast<Element>(z);
        }
    }
    inverse_ = std::move(inverse);
}

Element FiniteQuandle::inv_op(Element x, Element y) const {
    if (!has_inverse()) {
        throw std::logic_error("inverse operation undefined: a right translation is not a bijection");
    }
    return inverse_[index(x, y)];
}

FiniteQuandle FiniteQuandle::with_entry(Element x, Element y, Element value) const {
    std::vector<Element> table = table_;
    table[index(x, y)] = value;
    return FiniteQuandle(size_, std::move(table));
}

DihedralQuandle::DihedralQuandle(std::uint64_t n) : n_(n) {
    if (n < 1 || n > std::numeric_limits<Element>::max()) {
        throw InvalidModulus("dihedral quandle order out of range: " + std::to_string(n));
    }
}

Element DihedralQuandle::op(Element x, Element y) const { return dihedral_op(n_, x, y); }

FiniteQuandle DihedralQuandle::table() const {
    std::vector<Element> table(n_ * n_);
    for (std::uint64_t x = 0; x < n_; ++x) {
        for (std::uint64_t y = 0; y < n_; ++y) {
            table[x * n_ + y] = static_cast<Element>((2 * y + n_ - x) % n_);
        }
    }
    return FiniteQuandle(n_, std::move(table));
}

Element dihedral_op(std::uint64_t n, Element x, Element y) {
    if (n == 0 || x >= n || y >= n) {
        throw std::domain_error("dihedral_op: element out of range for R_" + std::to_string(n));
    }
    return static_cast<Element>((2 * static_cast<std::uint64_t>(y) + n - x) % n);
}

AxiomReport verify_quandle_axioms(const FiniteQuandle& q) {
    AxiomReport report;
    const auto m = static_cast<Element>(q.size());

    for (Element x = 0; x < m && report.idempotency.passed; ++x) {
        if (q.op(x, x) != x) {
            report.idempotency = {false, std::array<Element, 3>{x, x, q.op(x, x)}};
        }
    }

    for (Element y = 0; y < m && report.invertibility.passed; ++y) {
        std::vector<Element> preimage(m, m);
        for (Element z = 0; z < m; ++z) {
            const Element image = q.op(z, y);
            if (preimage[image] != m) {
                report.invertibility = {false, std::array<Element, 3>{y, preimage[image], z}};
                break;
            }
            preimage[image] = z;
        }
    }

    for (Element x = 0; x < m && report.distributivity.passed; ++x) {
        for (Element y = 0; y < m && report.distributivity.passed; ++y) {
            for (Element z = 0; z < m; ++z) {
                if (q.op(q.op(x, y), z) != q.op(q.op(x, z), q.op(y, z))) {
                    report.distributivity = {false, std::array<Element, 3>{x, y, z}};
                    break;
                }
            }
        }
    }
    return report;
}

std::string AxiomReport::to_string() const {
    std::ostringstream os;
    auto line = [&os](const char* name, const AxiomCheck& check) {
        os << name << ": " << (check.passed ? "pass" : "FAIL");
        if (check.witness) {
            const auto& w = *check.witness;
            os << " witness (" << w[0] << ", " << w[1] << ", " << w[2] << ")";
        }
        os << '\n';
    };
    line("right distributivity", distributivity);
    line("invertibility", invertibility);
    line("idempotency", idempotency);
    return os.str();
}

bool is_kei(const FiniteQuandle& q) {
    const auto m = static_cast<Element>(q.size());
    for (Element x = 0; x < m; ++x) {
        for (Element y = 0; y < m; ++y) {
            if (q.op(q.op(x, y), y) != x) {
                return false;
            }
        }
    }
    return true;
}

Endomorphism Endomorphism::affine(std::uint64_t n, std::uint64_t a, std::uint64_t b) {
    if (n < 1 || a >= n || b >= n) {
        throw std::domain_error("affine endomorphism parameters out of range");
    }
    Endomorphism phi;
    phi.images_.resize(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        phi.images_[x] = static_cast<Element>((a * x + b) % n);
    }
    phi.affine_ = AffineParams{a, b};
    return phi;
}

Endomorphism Endomorphism::from_images(std::vector<Element> images) {
    for (Element v : images) {
        if (v >= images.size()) {
            throw std::domain_error("endomorphism image out of range");
        }
    }
    Endomorphism phi;
    phi.images_ = std::move(images);
    return phi;
}

std::string Endomorphism::to_string() const {
    std::ostringstream os;
    if (affine_) {
        os << "x -> " << affine_->a << "x + " << affine_->b;
        return os.str();
    }
    os << '[';
    for (std::size_t i = 0; i < images_.size(); ++i) {
        os << (i ? "," : "") << images_[i];
    }
    os << ']';
    return os.str();
}

bool is_homomorphism(const FiniteQuandle& q, const std::vector<Element>& images) {
    if (images.size() != q.size()) {
        return false;
    }
    const auto m = static_cast<Element>(q.size());
    for (Element x = 0; x < m; ++x) {
        for (Element y = 0; y < m; ++y) {
            if (images[q.op(x, y)] != q.op(images[x], images[y])) {
                return false;
            }
        }
    }
    return true;
}

Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner) {
    if (outer.domain_size() != inner.domain_size()) {
        throw std::invalid_argument("compose: endomorphisms act on different quandles");
    }
    const auto n = inner.domain_size();
    if (outer.affine_params() && inner.affine_params()) {
        const auto [a1, b1] = *outer.affine_params();
        const auto [a2, b2] = *inner.affine_params();
        return Endomorphism::affine(n, (a1 * a2) % n, (a1 * b2 + b1) % n);
    }
    std::vector<Element> images(n);
    for (std::size_t x = 0; x < n; ++x) {
        images[x] = outer(inner(static_cast<Element>(x)));
    }
    return Endomorphism::from_images(std::move(images));
}

std::vector<Endomorphism> affine_endomorphisms(std::uint64_t n) {
    const FiniteQuandle rn = DihedralQuandle(n).table();
    std::vector<Endomorphism> out;
    out.reserve(n * n);
    for (std::uint64_t a = 0; a < n; ++a) {
        for (std::uint64_t b = 0; b < n; ++b) {
            Endomorphism phi = Endomorphism::affine(n, a, b);
            if (!is_homomorphism(rn, phi.images())) {
                throw ConsistencyError("affine map " + phi.to_string() + " is not an endomorphism of R_" +
                                       std::to_string(n));
            }
            out.push_back(std::move(phi));
        }
    }
    return out;
}

namespace {

class HomSearch {
public:
    explicit HomSearch(const FiniteQuandle& q) : q_(q), m_(static_cast<Element>(q.size())), images_(m_) {}

    std::vector<Endomorphism> run() {
        if (m_ > 0) {
            extend(0);
        } else {
            found_.push_back(Endomorphism::from_images({}));
        }
        return std::move(found_);
    }

private:
    // Every constraint whose three elements are all assigned and that
    // involves the newest element k.
    bool consistent(Element k) const {
        for (Element x = 0; x <= k; ++x) {
            for (Element y = 0; y <= k; ++y) {
                const Element z = q_.op(x, y);
                if (z > k || (x != k && y != k && z != k)) {
                    continue;
                }
                if (images_[z] != q_.op(images_[x], images_[y])) {
                    return false;
                }
            }
        }
        return true;
    }

    void extend(Element k) {
        for (Element v = 0; v < m_; ++v) {
            images_[k] = v;
            if (!consistent(k)) {
                continue;
            }
            if (k + 1 == m_) {
                found_.push_back(Endomorphism::from_images(images_));
            } else {
                extend(k + 1);
            }
        }
    }

    const FiniteQuandle& q_;
    Element m_;
    std::vector<Element> images_;
    std::vector<Endomorphism> found_;
};

}  // namespace

std::vector<Endomorphism> brute_force_endomorphisms(const FiniteQuandle& q, std::uint64_t cap) {
    // size^size, saturating.
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (space > cap / std::max<std::uint64_t>(q.size(), 1)) {
            space = std::numeric_limits<std::uint64_t>::max();
            break;
        }
        space *= q.size();
    }
    if (space > cap) {
        throw CapExceeded("brute-force endomorphism search over " + std::to_string(q.size()) + "^" +
                              std::to_string(q.size()) + " maps exceeds cap " + std::to_string(cap),
                          space, cap);
    }
    return HomSearch(q).run();
}

EndomorphismAudit audit_endomorphisms(std::uint64_t n, std::uint64_t cap) {
    EndomorphismAudit audit;
    audit.n = n;
    const auto affine = affine_endomorphisms(n);
    const auto brute = brute_force_endomorphisms(DihedralQuandle(n).table(), cap);
    audit.affine_count = affine.size();
    audit.brute_force_count = brute.size();

    // brute is sorted by image table; affine maps are looked up by images.
    audit.affine_subset = true;
    for (const auto& phi : affine) {
        if (!std::binary_search(brute.begin(), brute.end(), phi)) {
            audit.affine_subset = false;
        }
    }
    std::vector<Endomorphism> affine_sorted = affine;
    std::sort(affine_sorted.begin(), affine_sorted.end());
    for (const auto& phi : brute) {
        if (!std::binary_search(affine_sorted.begin(), affine_sorted.end(), phi)) {
            audit.surplus.push_back(phi);
        }
    }
    return audit;
}

std::string EndomorphismAudit::to_string() const {
    std::ostringstream os;
    os << "R_" << n << ": affine " << affine_count << ", exhaustive " << brute_force_count;
    if (!affine_subset) {
        os << ", WARNING affine family not contained in exhaustive result";
    }
    if (!surplus.empty()) {
        os << ", WARNING " << surplus.size() << " non-affine endomorphism(s), first "
           << surplus.front().to_string();
    }
    return os.str();
}

}  // namespace qquiver
