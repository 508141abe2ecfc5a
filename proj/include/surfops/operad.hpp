#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "surfops/rewriting.hpp"
#include "surfops/surface_term.hpp"

namespace surfops {

/// An object of the mapping-class-group operad: a surface term in normal
/// form. Equality is syntactic equality of normal forms, which is sound by
/// the uniqueness of the representative.
class OperadElement {
public:
    /// Normalizes the given term.
    explicit OperadElement(const SurfaceTerm& term) : term_(normalize(term)) {
        requireWellFormed(term_, "OperadElement");
        sig_ = signature(term_);
    }

    static OperadElement unit() { return OperadElement(SurfaceTerm::circle(1)); }
    static OperadElement disc() { return OperadElement(SurfaceTerm::disc()); }

    const SurfaceTerm& term() const { return term_; }
    const SurfaceSignature& sig() const { return sig_; }
    int arity() const { return sig_.freeCount; }
    int genus() const { return sig_.genus; }

    friend bool operator==(const OperadElement& a, const OperadElement& b) { return a.term_ == b.term_; }
    friend bool operator!=(const OperadElement& a, const OperadElement& b) { return !(a == b); }
    friend bool operator<(const OperadElement& a, const OperadElement& b) { return a.term_ < b.term_; }

private:
    SurfaceTerm term_;
    SurfaceSignature sig_;
};

/// Structure map of the operad: grafts each guest into the slot of `outer`
/// carrying its index, renames the surviving slots by the block convention
/// (guest 1's slots first, then guest 2's, each block in internal order), and
/// normalizes the result.
inline OperadElement gammaBar(const OperadElement& outer, const std::vector<OperadElement>& guests) {
    if (static_cast<int>(guests.size()) != outer.arity())
        throw std::invalid_argument("gammaBar: expected " + std::to_string(outer.arity()) + " arguments, got " +
                                    std::to_string(guests.size()));
    std::vector<int> offsets(guests.size() + 1, 0);
    for (std::size_t i = 0; i < guests.size(); ++i) offsets[i + 1] = offsets[i] + guests[i].arity();

    SurfaceTerm glued = outer.term();
    for (std::size_t i = 0; i < guests.size(); ++i) {
        int off = offsets[i];
        SurfaceTerm shifted = mapLabels(guests[i].term(), [off](int l) { return l + off; });
        glued = graft(glued, static_cast<int>(i + 1), shifted);
    }
    OperadElement out(glued);
    if (out.arity() != offsets.back()) throw std::logic_error("gammaBar: arity bookkeeping failed");
    return out;
}

/// Left action of the symmetric group: relabel the slots by sigma. The term
/// shape is unchanged, so the result is already normal.
inline OperadElement sigmaAct(const Permutation& sigma, const OperadElement& f) {
    if (sigma.size() != f.arity()) throw std::invalid_argument("sigmaAct: permutation size mismatch");
    return OperadElement(relabel(f.term(), sigma));
}

/// The operad map to the symmetric groups: the labeling permutation, sending
/// planar position p to the label at p. It intertwines gammaBar with
/// operadComposePerm.
inline Permutation projectLabels(const OperadElement& f) { return f.sig().labeling; }

/// An element of M(X) at object level: an operad element of arity k together
/// with k leaves, leaf i attached at the slot labeled i.
template <typename X>
struct MTerm {
    OperadElement top;
    std::vector<X> leaves;

    MTerm(OperadElement t, std::vector<X> ls) : top(std::move(t)), leaves(std::move(ls)) {
        if (static_cast<int>(leaves.size()) != top.arity())
            throw std::invalid_argument("MTerm: leaf count must equal arity");
    }

    friend bool operator==(const MTerm& a, const MTerm& b) { return a.top == b.top && a.leaves == b.leaves; }
    friend bool operator!=(const MTerm& a, const MTerm& b) { return !(a == b); }
};

/// Monad unit: x as a leaf of the unit circle.
template <typename X>
MTerm<X> etaM(X x) {
    return MTerm<X>(OperadElement::unit(), {std::move(x)});
}

/// Monad multiplication: flatten one level of nesting via gammaBar,
/// concatenating leaf blocks in slot-label order.
template <typename X>
MTerm<X> muM(const MTerm<MTerm<X>>& t) {
    std::vector<OperadElement> tops;
    tops.reserve(t.leaves.size());
    std::vector<X> leaves;
    for (const auto& kid : t.leaves) tops.push_back(kid.top);
    for (const auto& kid : t.leaves) leaves.insert(leaves.end(), kid.leaves.begin(), kid.leaves.end());
    return MTerm<X>(gammaBar(t.top, tops), std::move(leaves));
}

template <typename X, typename F>
auto mapLeaves(const MTerm<X>& t, F&& f) -> MTerm<decltype(f(t.leaves[0]))> {
    using Y = decltype(f(t.leaves[0]));
    std::vector<Y> out;
    out.reserve(t.leaves.size());
    for (const auto& x : t.leaves) out.push_back(f(x));
    return MTerm<Y>(t.top, std::move(out));
}

namespace detail {

/// Normal subterm shapes with exactly the given slot and torus counts,
/// generated directly from the structure of normal forms: a P node never has
/// a D child nor a P right child, so D survives only standalone or under T.
inline const std::vector<SurfaceTerm>& normalShapes(int slots, int genus) {
    static std::map<std::pair<int, int>, std::vector<SurfaceTerm>> cache;
    auto key = std::make_pair(slots, genus);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<SurfaceTerm> shapes;
    if (slots == 0 && genus == 0) shapes.push_back(SurfaceTerm::disc());
    if (slots == 1 && genus == 0) shapes.push_back(SurfaceTerm::slot(1));
    if (genus >= 1) {
        for (const auto& c : normalShapes(slots, genus - 1)) shapes.push_back(SurfaceTerm::torus(c));
    }
    for (int sl = 0; sl <= slots; ++sl) {
        for (int gl = 0; gl <= genus; ++gl) {
            // The right child cannot be the empty shape D, so the left child
            // is strictly smaller; skipping it also keeps the recursion founded.
            if (sl == slots && gl == genus) continue;
            for (const auto& l : normalShapes(sl, gl)) {
                if (l.is(TermKind::Disc)) continue;
                for (const auto& r : normalShapes(slots - sl, genus - gl)) {
                    if (r.is(TermKind::Disc) || r.is(TermKind::Pants)) continue;
                    shapes.push_back(SurfaceTerm::pants(l, r));
                }
            }
        }
    }
    return cache.emplace(key, std::move(shapes)).first->second;
}

} // namespace detail

/// All normal-form operad elements with arity <= maxArity and genus <=
/// maxGenus, every labeling included.
inline std::vector<OperadElement> enumerateNormalElements(int maxArity, int maxGenus) {
    std::vector<OperadElement> out;
    out.push_back(OperadElement::unit());
    for (int s = 0; s <= maxArity; ++s) {
        for (int g = 0; g <= maxGenus; ++g) {
            for (const auto& shape : detail::normalShapes(s, g)) {
                if (shape.is(TermKind::Slot)) continue;
                int next = 0;
                SurfaceTerm canon = mapLabels(shape, [&](int) { return ++next; });
                if (s == 0) {
                    out.push_back(OperadElement(canon));
                    continue;
                }
                for (const auto& perm : allPermutations(s)) out.push_back(OperadElement(relabel(canon, perm)));
            }
        }
    }
    return out;
}

} // namespace surfops
