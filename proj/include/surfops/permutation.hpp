#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfops {

/// A permutation of {1..n}, stored as the image list: apply(i) = images[i-1].
///
/// Composition is "apply right first": (a * b)(i) = a(b(i)).
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        if (!isValid()) throw std::invalid_argument("Permutation: image list is not a bijection on {1..n}");
    }

    static Permutation identity(int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }

    /// Transposition (i j) in S_n.
    static Permutation transposition(int n, int i, int j) {
        Permutation p = identity(n);
        std::swap(p.images_[static_cast<std::size_t>(i - 1)], p.images_[static_cast<std::size_t>(j - 1)]);
        return p;
    }

    int size() const { return static_cast<int>(images_.size()); }

    int apply(int i) const {
        if (i < 1 || i > size()) throw std::out_of_range("Permutation::apply: index " + std::to_string(i));
        return images_[static_cast<std::size_t>(i - 1)];
    }

    int operator()(int i) const { return apply(i); }

    bool isIdentity() const {
        for (int i = 1; i <= size(); ++i)
            if (apply(i) != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (int i = 1; i <= size(); ++i) inv[static_cast<std::size_t>(apply(i) - 1)] = i;
        return Permutation(std::move(inv));
    }

    /// (a * b)(i) = a(b(i)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw std::invalid_argument("Permutation: size mismatch in composition");
        std::vector<int> v(a.images_.size());
        for (int i = 1; i <= a.size(); ++i) v[static_cast<std::size_t>(i - 1)] = a.apply(b.apply(i));
        return Permutation(std::move(v));
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }

    /// Lexicographic order on image lists, for use as a map key.
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.images_ < b.images_; }

    const std::vector<int>& images() const { return images_; }

    std::string toString() const {
        std::string s = "(";
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(images_[i]);
        }
        return s + ")";
    }

private:
    bool isValid() const {
        std::vector<bool> seen(images_.size(), false);
        for (int x : images_) {
            if (x < 1 || x > size() || seen[static_cast<std::size_t>(x - 1)]) return false;
            seen[static_cast<std::size_t>(x - 1)] = true;
        }
        return true;
    }

    std::vector<int> images_;
};

/// All n! permutations of {1..n}, in lexicographic order. Intended for small n.
inline std::vector<Permutation> allPermutations(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

template <typename Rng>
Permutation randomPermutation(int n, Rng& rng) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    return Permutation(std::move(v));
}

/// Direct sum tau_1 + ... + tau_k acting blockwise on consecutive blocks.
inline Permutation blockSum(const std::vector<Permutation>& taus) {
    int total = 0;
    for (const auto& t : taus) total += t.size();
    std::vector<int> v(static_cast<std::size_t>(total));
    int offset = 0;
    for (const auto& t : taus) {
        for (int s = 1; s <= t.size(); ++s)
            v[static_cast<std::size_t>(offset + s - 1)] = offset + t.apply(s);
        offset += t.size();
    }
    return Permutation(std::move(v));
}

/// The block permutation induced by sigma in S_k on blocks of the given sizes.
///
/// Source block l (size sizes[l-1], occupying positions after the first l-1
/// blocks) is moved, order-preserved, to the position of target block
/// sigma(l); target block i has size sizes[sigma^{-1}(i) - 1]. Blocks of size
/// zero are allowed and simply disappear, which is also how strand deletion
/// is realized.
inline Permutation blockPermutation(const Permutation& sigma, const std::vector<int>& sizes) {
    const int k = sigma.size();
    if (static_cast<int>(sizes.size()) != k)
        throw std::invalid_argument("blockPermutation: sizes/permutation length mismatch");
    Permutation inv = sigma.inverse();
    std::vector<int> targetOffset(static_cast<std::size_t>(k + 1), 0);
    int acc = 0;
    for (int i = 1; i <= k; ++i) {
        targetOffset[static_cast<std::size_t>(i)] = acc;
        acc += sizes[static_cast<std::size_t>(inv.apply(i) - 1)];
    }
    int total = 0;
    for (int b : sizes) total += b;
    std::vector<int> v(static_cast<std::size_t>(total));
    int src = 0;
    for (int l = 1; l <= k; ++l) {
        int b = sizes[static_cast<std::size_t>(l - 1)];
        int dst = targetOffset[static_cast<std::size_t>(sigma.apply(l))];
        for (int s = 1; s <= b; ++s) v[static_cast<std::size_t>(src + s - 1)] = dst + s;
        src += b;
    }
    return Permutation(std::move(v));
}

/// Structure map of the symmetric-groups operad:
/// gamma(sigma; tau_1..tau_k) = blockSum(taus) * blockPermutation(sigma, |tau_{sigma(l)}|).
inline Permutation operadComposePerm(const Permutation& sigma, const std::vector<Permutation>& taus) {
    if (static_cast<int>(taus.size()) != sigma.size())
        throw std::invalid_argument("operadComposePerm: arity mismatch");
    std::vector<int> permutedSizes(taus.size());
    for (int l = 1; l <= sigma.size(); ++l)
        permutedSizes[static_cast<std::size_t>(l - 1)] = taus[static_cast<std::size_t>(sigma.apply(l) - 1)].size();
    return blockSum(taus) * blockPermutation(sigma, permutedSizes);
}

/// Deletes strand r from sigma: the permutation on {1..n-1} obtained by
/// composing with an empty block at slot r.
inline Permutation deleteStrand(const Permutation& sigma, int r) {
    std::vector<int> sizes(static_cast<std::size_t>(sigma.size()), 1);
    sizes[static_cast<std::size_t>(r - 1)] = 0;
    return blockPermutation(sigma, sizes);
}

} // namespace surfops
