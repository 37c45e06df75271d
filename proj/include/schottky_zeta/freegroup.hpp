#pragma once

#include <cstdlib>
#include <span>
#include <utility>
#include <vector>

#include "schottky_zeta/errors.hpp"

namespace szeta {

/// Letters are nonzero integers in {±1, ..., ±g}; -i stands for the inverse
/// of generator i. The letter order used everywhere is 1 < -1 < 2 < -2 < ...
inline int letter_rank(int letter) {
    return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
}

/// A freely reduced word in the rank-g free group.
class ReducedWord {
public:
    explicit ReducedWord(int rank) : rank_(rank) {}
    ReducedWord(std::vector<int> reduced_letters, int rank)
        : letters_(std::move(reduced_letters)), rank_(rank) {}

    /// Free reduction of an arbitrary letter sequence. Throws BadLetter on
    /// zero letters or letters exceeding the rank. Idempotent.
    static ReducedWord reduce(std::span<const int> letters, int rank);

    int rank() const { return rank_; }
    int size() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }
    const std::vector<int>& letters() const { return letters_; }
    int operator[](int i) const { return letters_[static_cast<size_t>(i)]; }

    ReducedWord inverse() const;
    ReducedWord concat(const ReducedWord& rhs) const;  // product with cancellation

    bool is_cyclically_reduced() const {
        return letters_.size() < 2 || letters_.front() != -letters_.back();
    }

    friend bool operator==(const ReducedWord& a, const ReducedWord& b) {
        return a.rank_ == b.rank_ && a.letters_ == b.letters_;
    }

private:
    std::vector<int> letters_;
    int rank_;
};

/// Splits w as conjugator * core * conjugator^{-1} with core cyclically reduced.
std::pair<ReducedWord, ReducedWord> cyclic_reduce(const ReducedWord& w);

/// True iff the cyclically reduced, nonempty word is not a proper power.
/// Throws NotCyclicallyReduced (empty words are rejected the same way).
bool is_primitive(const ReducedWord& w);

/// Canonical representative of a primitive conjugacy class: cyclically
/// reduced, primitive, and lexicographically minimal among its rotations.
/// A class and its inverse class are distinct objects.
struct ConjClass {
    ReducedWord rep;
    int length() const { return rep.size(); }
};

namespace detail {

// A word already known to be cyclically reduced is the canonical class
// representative iff it is strictly smaller than all its proper rotations;
// equality with a proper rotation means the word is periodic, hence a
// proper power.
inline bool is_minimal_rotation_and_primitive(const int* w, int len) {
    for (int s = 1; s < len; ++s) {
        int cmp = 0;
        for (int k = 0; k < len; ++k) {
            int i = s + k;
            if (i >= len) i -= len;
            const int a = w[i];
            const int b = w[k];
            if (a != b) {
                cmp = letter_rank(a) < letter_rank(b) ? -1 : 1;
                break;
            }
        }
        if (cmp <= 0) return false;
    }
    return true;
}

// DFS over cyclically reduced words of the exact length with the given first
// letter, all later letters of rank >= rank(first). Calls visit(w, len) for
// each canonical primitive representative, in lexicographic order.
template <typename Visit>
void emit_classes_fixed_first(int rank, int len, int first, std::vector<int>& buf, Visit&& visit) {
    buf.resize(static_cast<size_t>(len));
    buf[0] = first;
    if (len == 1) {
        visit(buf.data(), 1);
        return;
    }
    const int min_rank = letter_rank(first);
    // Letters of rank >= min_rank in rank order.
    std::vector<int> alphabet;
    for (int r = min_rank; r < 2 * rank; ++r) {
        const int i = r / 2 + 1;
        alphabet.push_back(r % 2 == 0 ? i : -i);
    }
    std::vector<size_t> choice(static_cast<size_t>(len), 0);
    int pos = 1;
    while (pos >= 1) {
        if (choice[static_cast<size_t>(pos)] >= alphabet.size()) {
            choice[static_cast<size_t>(pos)] = 0;
            --pos;
            if (pos >= 1) ++choice[static_cast<size_t>(pos)];
            continue;
        }
        const int x = alphabet[choice[static_cast<size_t>(pos)]];
        if (x == -buf[static_cast<size_t>(pos - 1)] || (pos == len - 1 && x == -first)) {
            ++choice[static_cast<size_t>(pos)];
            continue;
        }
        buf[static_cast<size_t>(pos)] = x;
        if (pos == len - 1) {
            if (is_minimal_rotation_and_primitive(buf.data(), len)) visit(buf.data(), len);
            ++choice[static_cast<size_t>(pos)];
        } else {
            ++pos;
        }
    }
}

}  // namespace detail

/// Visits exactly one canonical representative per primitive conjugacy class
/// of word length <= max_len, in (length, lexicographic) order.
/// visit receives (const int* letters, int len).
template <typename Visit>
void for_each_class(int rank, int max_len, Visit&& visit) {
    if (rank < 1) throw BadLetter("rank must be >= 1");
    std::vector<int> buf;
    for (int len = 1; len <= max_len; ++len) {
        for (int r = 0; r < 2 * rank; ++r) {
            const int first = r % 2 == 0 ? r / 2 + 1 : -(r / 2 + 1);
            detail::emit_classes_fixed_first(rank, len, first, buf, visit);
        }
    }
}

/// Same, restricted to classes whose canonical representative starts with the
/// given letter. The partitions over all 2g letters are disjoint and cover
/// every class, which is what makes prefix-parallel enumeration sound.
template <typename Visit>
void for_each_class_with_first(int rank, int max_len, int first, Visit&& visit) {
    if (rank < 1 || first == 0 || std::abs(first) > rank) throw BadLetter();
    std::vector<int> buf;
    for (int len = 1; len <= max_len; ++len) {
        detail::emit_classes_fixed_first(rank, len, first, buf, visit);
    }
}

/// Materialized enumeration (kept for small scales and tests; the visitor
/// form avoids the allocation per class).
std::vector<ConjClass> enumerate_classes(int rank, int max_len);

/// Reduced words of length <= max_len whose last letter is not ±gen_index,
/// one per left coset of the cyclic subgroup generated by generator
/// gen_index, including the empty word. (length, lexicographic) order.
std::vector<ReducedWord> enumerate_coset_reps(int rank, int gen_index, int max_len);

}  // namespace szeta
