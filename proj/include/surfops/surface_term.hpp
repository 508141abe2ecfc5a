#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "surfops/permutation.hpp"

namespace surfops {

enum class TermKind { Disc, Torus, Pants, Slot, Circle };

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// A rooted planar term over the generators D (disc), P (pair of pants) and
/// T (torus), with labeled free slots, plus the stand-alone circle atom.
///
/// Slots carry positive integer labels. A term is *well formed* when its root
/// is not a bare slot and its slot labels are pairwise distinct; it has
/// *canonical labels* when they are exactly {1..n}. The circle never occurs
/// as a proper subterm; the factory functions enforce this.
class SurfaceTerm {
public:
    static SurfaceTerm disc() { return SurfaceTerm(TermKind::Disc, 0, {}); }

    static SurfaceTerm torus(SurfaceTerm inner) {
        requireNotCircle(inner, "T");
        return SurfaceTerm(TermKind::Torus, 0, {std::move(inner)});
    }

    static SurfaceTerm pants(SurfaceTerm left, SurfaceTerm right) {
        requireNotCircle(left, "P");
        requireNotCircle(right, "P");
        return SurfaceTerm(TermKind::Pants, 0, {std::move(left), std::move(right)});
    }

    static SurfaceTerm slot(int label) {
        if (label < 1) throw std::invalid_argument("SurfaceTerm: slot label must be positive");
        return SurfaceTerm(TermKind::Slot, label, {});
    }

    static SurfaceTerm circle(int label) {
        if (label < 1) throw std::invalid_argument("SurfaceTerm: circle label must be positive");
        return SurfaceTerm(TermKind::Circle, label, {});
    }

    TermKind kind() const { return kind_; }
    bool is(TermKind k) const { return kind_ == k; }

    /// Label of a Slot or Circle node.
    int label() const {
        if (kind_ != TermKind::Slot && kind_ != TermKind::Circle)
            throw std::logic_error("SurfaceTerm::label on a generator node");
        return label_;
    }

    std::size_t childCount() const { return children_.size(); }

    const SurfaceTerm& child(std::size_t i) const { return children_.at(i); }

    /// Total number of nodes, counting slots and circles.
    int nodeCount() const {
        int n = 1;
        for (const auto& c : children_) n += c.nodeCount();
        return n;
    }

    int genus() const {
        int g = kind_ == TermKind::Torus ? 1 : 0;
        for (const auto& c : children_) g += c.genus();
        return g;
    }

    int freeCount() const {
        if (kind_ == TermKind::Slot || kind_ == TermKind::Circle) return 1;
        int n = 0;
        for (const auto& c : children_) n += c.freeCount();
        return n;
    }

    /// Slot labels in planar left-to-right order (a circle counts as one slot).
    std::vector<int> slotLabels() const {
        std::vector<int> out;
        collectLabels(out);
        return out;
    }

    friend bool operator==(const SurfaceTerm& a, const SurfaceTerm& b) {
        return a.kind_ == b.kind_ && a.label_ == b.label_ && a.children_ == b.children_;
    }
    friend bool operator!=(const SurfaceTerm& a, const SurfaceTerm& b) { return !(a == b); }

    friend bool operator<(const SurfaceTerm& a, const SurfaceTerm& b) {
        if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
        if (a.label_ != b.label_) return a.label_ < b.label_;
        return a.children_ < b.children_;
    }

private:
    SurfaceTerm(TermKind kind, int label, std::vector<SurfaceTerm> children)
        : kind_(kind), label_(label), children_(std::move(children)) {}

    static void requireNotCircle(const SurfaceTerm& t, const char* ctor) {
        if (t.kind_ == TermKind::Circle)
            throw std::invalid_argument(std::string("SurfaceTerm: circle cannot be a child of ") + ctor);
    }

    void collectLabels(std::vector<int>& out) const {
        if (kind_ == TermKind::Slot || kind_ == TermKind::Circle) {
            out.push_back(label_);
            return;
        }
        for (const auto& c : children_) c.collectLabels(out);
    }

    TermKind kind_;
    int label_;
    std::vector<SurfaceTerm> children_;
};

/// genus, number of free slots, and the labeling read off the slots in planar
/// left-to-right order: labeling(p) is the label sitting at planar position p.
struct SurfaceSignature {
    int genus = 0;
    int freeCount = 0;
    Permutation labeling;

    friend bool operator==(const SurfaceSignature& a, const SurfaceSignature& b) {
        return a.genus == b.genus && a.freeCount == b.freeCount && a.labeling == b.labeling;
    }
    friend bool operator!=(const SurfaceSignature& a, const SurfaceSignature& b) { return !(a == b); }
};

inline bool hasCanonicalLabels(const SurfaceTerm& t) {
    std::vector<int> labels = t.slotLabels();
    std::vector<bool> seen(labels.size(), false);
    for (int l : labels) {
        if (l < 1 || l > static_cast<int>(labels.size()) || seen[static_cast<std::size_t>(l - 1)]) return false;
        seen[static_cast<std::size_t>(l - 1)] = true;
    }
    return true;
}

inline bool isWellFormed(const SurfaceTerm& t) {
    if (t.kind() == TermKind::Slot) return false;
    return hasCanonicalLabels(t);
}

inline void requireWellFormed(const SurfaceTerm& t, const char* where) {
    if (t.kind() == TermKind::Slot)
        throw std::invalid_argument(std::string(where) + ": a bare slot is not a surface term");
    if (!hasCanonicalLabels(t))
        throw std::invalid_argument(std::string(where) + ": slot labels are not a bijection onto {1..n}");
}

inline SurfaceSignature signature(const SurfaceTerm& t) {
    requireWellFormed(t, "signature");
    SurfaceSignature sig;
    sig.genus = t.genus();
    sig.freeCount = t.freeCount();
    sig.labeling = Permutation(t.slotLabels());
    return sig;
}

/// Replaces each slot label l by f(l). Internal helper behind relabel and the
/// block convention of the operad module; does not revalidate.
template <typename F>
SurfaceTerm mapLabels(const SurfaceTerm& t, F&& f) {
    switch (t.kind()) {
    case TermKind::Disc:
        return SurfaceTerm::disc();
    case TermKind::Torus:
        return SurfaceTerm::torus(mapLabels(t.child(0), f));
    case TermKind::Pants:
        return SurfaceTerm::pants(mapLabels(t.child(0), f), mapLabels(t.child(1), f));
    case TermKind::Slot:
        return SurfaceTerm::slot(f(t.label()));
    case TermKind::Circle:
        return SurfaceTerm::circle(f(t.label()));
    }
    throw std::logic_error("mapLabels: unreachable");
}

/// Slot label i becomes perm(i). The term must have canonical labels {1..n}
/// and perm must be a permutation of {1..n}.
inline SurfaceTerm relabel(const SurfaceTerm& t, const Permutation& perm) {
    requireWellFormed(t, "relabel");
    if (perm.size() != t.freeCount())
        throw std::invalid_argument("relabel: permutation size does not match free count");
    return mapLabels(t, [&](int l) { return perm.apply(l); });
}

/// Replaces the slot (or whole circle) carrying `label` by `guest`.
///
/// Grafting into a circle returns the guest; grafting a circle into a slot
/// renames that slot by the circle's label. Label management is the caller's
/// duty: the result is only well formed if the surviving labels are disjoint.
inline SurfaceTerm graft(const SurfaceTerm& host, int label, const SurfaceTerm& guest) {
    if (host.kind() == TermKind::Circle) {
        if (host.label() != label) throw std::invalid_argument("graft: circle has no slot with that label");
        return guest;
    }
    bool found = false;
    // replace within a generator tree
    struct Impl {
        int label;
        const SurfaceTerm& guest;
        bool* found;
        SurfaceTerm run(const SurfaceTerm& t) {
            switch (t.kind()) {
            case TermKind::Disc:
                return t;
            case TermKind::Torus:
                return SurfaceTerm::torus(run(t.child(0)));
            case TermKind::Pants: {
                SurfaceTerm l = run(t.child(0));
                SurfaceTerm r = run(t.child(1));
                return SurfaceTerm::pants(std::move(l), std::move(r));
            }
            case TermKind::Slot:
                if (t.label() == label) {
                    *found = true;
                    if (guest.kind() == TermKind::Circle) return SurfaceTerm::slot(guest.label());
                    return guest;
                }
                return t;
            case TermKind::Circle:
                throw std::logic_error("graft: circle inside a term");
            }
            throw std::logic_error("graft: unreachable");
        }
    };
    SurfaceTerm out = Impl{label, guest, &found}.run(host);
    if (!found) throw std::invalid_argument("graft: no slot with label " + std::to_string(label));
    return out;
}

inline std::string render(const SurfaceTerm& t) {
    switch (t.kind()) {
    case TermKind::Disc:
        return "D";
    case TermKind::Torus:
        return "T(" + render(t.child(0)) + ")";
    case TermKind::Pants:
        return "P(" + render(t.child(0)) + "," + render(t.child(1)) + ")";
    case TermKind::Slot:
        return "@" + std::to_string(t.label());
    case TermKind::Circle:
        return "O@" + std::to_string(t.label());
    }
    throw std::logic_error("render: unreachable");
}

namespace detail {

class TermParser {
public:
    explicit TermParser(const std::string& text) : text_(text) {}

    SurfaceTerm parseWholeTerm() {
        SurfaceTerm t = parseTerm();
        skipWs();
        if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
        if (t.kind() == TermKind::Slot) throw ParseError("a bare slot is not a surface term", 0);
        validateLabels(t);
        return t;
    }

private:
    SurfaceTerm parseTerm() {
        skipWs();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        switch (c) {
        case 'D':
            ++pos_;
            return SurfaceTerm::disc();
        case 'T': {
            ++pos_;
            expect('(');
            SurfaceTerm inner = parseTerm();
            if (inner.kind() == TermKind::Circle) throw ParseError("circle cannot appear inside a term", pos_);
            expect(')');
            return SurfaceTerm::torus(std::move(inner));
        }
        case 'P': {
            ++pos_;
            expect('(');
            SurfaceTerm left = parseTerm();
            if (left.kind() == TermKind::Circle) throw ParseError("circle cannot appear inside a term", pos_);
            expect(',');
            SurfaceTerm right = parseTerm();
            if (right.kind() == TermKind::Circle) throw ParseError("circle cannot appear inside a term", pos_);
            expect(')');
            return SurfaceTerm::pants(std::move(left), std::move(right));
        }
        case '@':
            ++pos_;
            return SurfaceTerm::slot(parseInt());
        case 'O': {
            ++pos_;
            expect('@');
            return SurfaceTerm::circle(parseInt());
        }
        default:
            throw ParseError(std::string("expected term, found '") + c + "'", pos_);
        }
    }

    void validateLabels(const SurfaceTerm& t) {
        std::vector<int> labels = t.slotLabels();
        std::set<int> seen;
        for (int l : labels) {
            if (!seen.insert(l).second) throw ParseError("duplicate label @" + std::to_string(l), 0);
        }
        for (int i = 1; i <= static_cast<int>(labels.size()); ++i) {
            if (!seen.count(i))
                throw ParseError("labels are not contiguous: missing @" + std::to_string(i), 0);
        }
    }

    void skipWs() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skipWs();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    int parseInt() {
        skipWs();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected integer label", pos_);
        int v = std::stoi(text_.substr(start, pos_ - start));
        if (v < 1) throw ParseError("labels start at 1", start);
        return v;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Grammar: term := "D" | "T(" term ")" | "P(" term "," term ")" | "@" INT | "O@" INT.
/// Whitespace-insensitive. The parsed term must have canonical labels.
inline SurfaceTerm parse(const std::string& text) { return detail::TermParser(text).parseWholeTerm(); }

inline nlohmann::json toJson(const SurfaceTerm& t) {
    nlohmann::json j;
    switch (t.kind()) {
    case TermKind::Disc:
        j["kind"] = "D";
        break;
    case TermKind::Torus:
        j["kind"] = "T";
        j["children"] = nlohmann::json::array({toJson(t.child(0))});
        break;
    case TermKind::Pants:
        j["kind"] = "P";
        j["children"] = nlohmann::json::array({toJson(t.child(0)), toJson(t.child(1))});
        break;
    case TermKind::Slot:
        j["kind"] = "free";
        j["label"] = t.label();
        break;
    case TermKind::Circle:
        j["kind"] = "circle";
        j["label"] = t.label();
        break;
    }
    return j;
}

/// All well-formed terms with at most maxNodes nodes, every labeling included.
/// The circle O@1 is the only circle term with canonical labels.
inline std::vector<SurfaceTerm> enumerateTerms(int maxNodes) {
    // Shapes are generated with slots labeled by planar position; labelings
    // are applied afterwards.
    std::map<int, std::vector<SurfaceTerm>> shapesByNodes; // subterm shapes (slots allowed at root)
    for (int n = 1; n <= maxNodes; ++n) {
        std::vector<SurfaceTerm> shapes;
        if (n == 1) {
            shapes.push_back(SurfaceTerm::disc());
            shapes.push_back(SurfaceTerm::slot(1));
        } else {
            for (const auto& inner : shapesByNodes[n - 1]) shapes.push_back(SurfaceTerm::torus(inner));
            for (int ln = 1; ln <= n - 2; ++ln) {
                for (const auto& l : shapesByNodes[ln])
                    for (const auto& r : shapesByNodes[n - 1 - ln]) shapes.push_back(SurfaceTerm::pants(l, r));
            }
        }
        shapesByNodes[n] = std::move(shapes);
    }

    // Renumber a shape's slots to planar order 1..n, then emit all labelings.
    std::vector<SurfaceTerm> out;
    out.push_back(SurfaceTerm::circle(1));
    for (int n = 1; n <= maxNodes; ++n) {
        for (const auto& shape : shapesByNodes[n]) {
            if (shape.kind() == TermKind::Slot) continue;
            int next = 0;
            SurfaceTerm canon = mapLabels(shape, [&](int) { return ++next; });
            int slots = canon.freeCount();
            if (slots == 0) {
                out.push_back(canon);
                continue;
            }
            for (const auto& perm : allPermutations(slots)) out.push_back(relabel(canon, perm));
        }
    }
    return out;
}

} // namespace surfops
