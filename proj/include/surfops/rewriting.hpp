#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "surfops/surface_term.hpp"

namespace surfops {

/// The three moves of the quotient construction:
///   Reassoc:   P(x, P(y,z)) => P(P(x,y), z)
///   UnitRight: P(x, D)      => x
///   UnitLeft:  P(D, x)      => x
/// x, y, z range over subterms or free slots.
enum class RewriteRule { Reassoc, UnitRight, UnitLeft };

inline const char* ruleName(RewriteRule r) {
    switch (r) {
    case RewriteRule::Reassoc: return "Reassoc";
    case RewriteRule::UnitRight: return "UnitRight";
    case RewriteRule::UnitLeft: return "UnitLeft";
    }
    return "?";
}

/// Path from the root: child indices, empty for the root itself.
using TermPosition = std::vector<int>;

struct Redex {
    TermPosition position;
    RewriteRule rule;

    friend bool operator==(const Redex& a, const Redex& b) {
        return a.position == b.position && a.rule == b.rule;
    }
    friend bool operator<(const Redex& a, const Redex& b) {
        if (a.position != b.position) return a.position < b.position;
        return a.rule < b.rule;
    }
};

namespace detail {

inline void rulesAt(const SurfaceTerm& node, const TermPosition& pos, std::vector<Redex>& out) {
    if (node.kind() != TermKind::Pants) return;
    if (node.child(1).is(TermKind::Pants)) out.push_back({pos, RewriteRule::Reassoc});
    if (node.child(1).is(TermKind::Disc)) out.push_back({pos, RewriteRule::UnitRight});
    if (node.child(0).is(TermKind::Disc)) out.push_back({pos, RewriteRule::UnitLeft});
}

inline void findRedexesImpl(const SurfaceTerm& node, TermPosition& pos, std::vector<Redex>& out) {
    rulesAt(node, pos, out);
    for (std::size_t i = 0; i < node.childCount(); ++i) {
        pos.push_back(static_cast<int>(i));
        findRedexesImpl(node.child(i), pos, out);
        pos.pop_back();
    }
}

inline const SurfaceTerm& subtermAt(const SurfaceTerm& t, const TermPosition& pos) {
    const SurfaceTerm* cur = &t;
    for (int i : pos) {
        if (static_cast<std::size_t>(i) >= cur->childCount())
            throw std::invalid_argument("applyRule: position does not exist");
        cur = &cur->child(static_cast<std::size_t>(i));
    }
    return *cur;
}

inline SurfaceTerm rewriteNode(const SurfaceTerm& node, RewriteRule rule) {
    switch (rule) {
    case RewriteRule::Reassoc: {
        const SurfaceTerm& x = node.child(0);
        const SurfaceTerm& inner = node.child(1);
        return SurfaceTerm::pants(SurfaceTerm::pants(x, inner.child(0)), inner.child(1));
    }
    case RewriteRule::UnitRight:
        return node.child(0);
    case RewriteRule::UnitLeft:
        return node.child(1);
    }
    throw std::logic_error("rewriteNode: unreachable");
}

inline SurfaceTerm replaceAt(const SurfaceTerm& t, const TermPosition& pos, std::size_t depth,
                             const SurfaceTerm& replacement) {
    if (depth == pos.size()) return replacement;
    int i = pos[depth];
    if (t.kind() == TermKind::Torus) return SurfaceTerm::torus(replaceAt(t.child(0), pos, depth + 1, replacement));
    if (t.kind() == TermKind::Pants) {
        if (i == 0)
            return SurfaceTerm::pants(replaceAt(t.child(0), pos, depth + 1, replacement), t.child(1));
        return SurfaceTerm::pants(t.child(0), replaceAt(t.child(1), pos, depth + 1, replacement));
    }
    throw std::invalid_argument("applyRule: position does not exist");
}

} // namespace detail

/// All rule matches at all positions, in preorder; empty iff the term is normal.
inline std::vector<Redex> findRedexes(const SurfaceTerm& t) {
    std::vector<Redex> out;
    TermPosition pos;
    detail::findRedexesImpl(t, pos, out);
    return out;
}

inline bool isNormal(const SurfaceTerm& t) {
    if (t.kind() == TermKind::Pants) {
        if (t.child(1).is(TermKind::Pants) || t.child(1).is(TermKind::Disc) || t.child(0).is(TermKind::Disc))
            return false;
    }
    for (std::size_t i = 0; i < t.childCount(); ++i)
        if (!isNormal(t.child(i))) return false;
    return true;
}

/// Termination measure: (node count, sum over P-nodes of the node count of
/// the right subtree). Every rewrite strictly decreases it lexicographically.
inline std::pair<int, int> terminationMeasure(const SurfaceTerm& t) {
    int rightWeight = t.kind() == TermKind::Pants ? t.child(1).nodeCount() : 0;
    for (std::size_t i = 0; i < t.childCount(); ++i) rightWeight += terminationMeasure(t.child(i)).second;
    return {t.nodeCount(), rightWeight};
}

/// Performs the rewrite at the given position. Labels and their planar order
/// are untouched; the genus is preserved. A unit collapse of the whole term
/// onto a bare slot yields the circle carrying that slot's label.
inline SurfaceTerm applyRule(const SurfaceTerm& t, const TermPosition& position, RewriteRule rule) {
    const SurfaceTerm& node = detail::subtermAt(t, position);
    std::vector<Redex> here;
    detail::rulesAt(node, position, here);
    bool matches = false;
    for (const auto& r : here) matches = matches || r.rule == rule;
    if (!matches)
        throw std::invalid_argument(std::string("applyRule: ") + ruleName(rule) + " is not a redex at that position");
    SurfaceTerm replacement = detail::rewriteNode(node, rule);
    SurfaceTerm result = detail::replaceAt(t, position, 0, replacement);
    if (result.kind() == TermKind::Slot) return SurfaceTerm::circle(result.label());
    return result;
}

struct RewriteStep {
    TermPosition position;
    RewriteRule rule;
    SurfaceTerm result;
};

/// A replayable record of a normalization run.
struct RewriteTrace {
    SurfaceTerm source;
    std::vector<RewriteStep> steps;

    const SurfaceTerm& target() const { return steps.empty() ? source : steps.back().result; }

    /// Replays the trace from the source; throws if any step fails to match.
    bool replay() const {
        SurfaceTerm cur = source;
        for (const auto& s : steps) {
            cur = applyRule(cur, s.position, s.rule);
            if (cur != s.result) return false;
        }
        return true;
    }
};

enum class RewriteStrategy { LeftmostInnermost, RightmostOutermost, Random };

namespace detail {

inline std::size_t pickRedex(const std::vector<Redex>& redexes, RewriteStrategy strategy, std::mt19937_64* rng) {
    switch (strategy) {
    case RewriteStrategy::LeftmostInnermost: {
        // Deepest position first; preorder lists equal-depth redexes left to
        // right, so keeping the first deepest one picks the leftmost.
        std::size_t best = 0;
        for (std::size_t i = 1; i < redexes.size(); ++i) {
            if (redexes[i].position.size() > redexes[best].position.size()) best = i;
        }
        return best;
    }
    case RewriteStrategy::RightmostOutermost: {
        std::size_t best = redexes.size() - 1;
        for (std::size_t i = redexes.size(); i-- > 0;) {
            if (redexes[i].position.size() < redexes[best].position.size()) best = i;
        }
        return best;
    }
    case RewriteStrategy::Random: {
        std::uniform_int_distribution<std::size_t> d(0, redexes.size() - 1);
        return d(*rng);
    }
    }
    return 0;
}

} // namespace detail

/// Rewrites to the unique normal form (Claim 1 representative), recording a
/// trace. The measure is asserted to decrease at every step.
inline std::pair<SurfaceTerm, RewriteTrace> normalizeWithTrace(
    const SurfaceTerm& t, RewriteStrategy strategy = RewriteStrategy::LeftmostInnermost,
    std::mt19937_64* rng = nullptr, std::uint64_t* stepCounter = nullptr) {
    RewriteTrace trace{t, {}};
    SurfaceTerm cur = t;
    auto measure = terminationMeasure(cur);
    for (;;) {
        std::vector<Redex> redexes = findRedexes(cur);
        if (redexes.empty()) break;
        const Redex& r = redexes[detail::pickRedex(redexes, strategy, rng)];
        cur = applyRule(cur, r.position, r.rule);
        auto next = terminationMeasure(cur);
        if (next >= measure)
            throw std::logic_error("normalize: termination measure failed to decrease");
        measure = next;
        if (stepCounter) ++*stepCounter;
        trace.steps.push_back({r.position, r.rule, cur});
    }
    return {cur, std::move(trace)};
}

inline SurfaceTerm normalize(const SurfaceTerm& t) { return normalizeWithTrace(t).first; }

struct ConfluenceReport {
    int maxNodes = 0;
    std::uint64_t termsChecked = 0;
    std::uint64_t statesExplored = 0;
    int maxPathLength = 0;
    std::vector<std::string> counterexamples; // rendered terms with >1 normal form

    bool ok() const { return counterexamples.empty(); }
};

/// Explores the full rewrite graph of one term; returns its set of normal
/// forms, and accumulates the longest rewrite path into maxPath.
inline std::set<SurfaceTerm> rewriteGraphNormalForms(const SurfaceTerm& t, int* maxPath = nullptr,
                                                     std::uint64_t* states = nullptr) {
    std::set<SurfaceTerm> normals;
    std::map<SurfaceTerm, int> longest; // longest path to a normal form, memoized
    // The graph is a finite DAG by termination, so plain recursion is safe.
    struct Impl {
        std::set<SurfaceTerm>& normals;
        std::map<SurfaceTerm, int>& longest;
        int run(const SurfaceTerm& cur) {
            auto it = longest.find(cur);
            if (it != longest.end()) return it->second;
            std::vector<Redex> redexes = findRedexes(cur);
            int depth = 0;
            if (redexes.empty()) {
                normals.insert(cur);
            } else {
                for (const auto& r : redexes)
                    depth = std::max(depth, 1 + run(applyRule(cur, r.position, r.rule)));
            }
            longest.emplace(cur, depth);
            return depth;
        }
    };
    int depth = Impl{normals, longest}.run(t);
    if (maxPath) *maxPath = std::max(*maxPath, depth);
    if (states) *states += longest.size();
    return normals;
}

/// Exhaustively checks Claim 1 uniqueness over every well-formed term with at
/// most maxNodes nodes: each full rewrite graph must reach a single normal form.
inline ConfluenceReport checkConfluence(int maxNodes) {
    if (maxNodes < 1) throw std::invalid_argument("checkConfluence: maxNodes must be >= 1");
    ConfluenceReport report;
    report.maxNodes = maxNodes;
    for (const auto& t : enumerateTerms(maxNodes)) {
        ++report.termsChecked;
        std::set<SurfaceTerm> normals = rewriteGraphNormalForms(t, &report.maxPathLength, &report.statesExplored);
        if (normals.size() != 1) report.counterexamples.push_back(render(t));
    }
    return report;
}

} // namespace surfops
