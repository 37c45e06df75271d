#include "schottky_zeta/freegroup.hpp"

#include <algorithm>

namespace szeta {

ReducedWord ReducedWord::reduce(std::span<const int> letters, int rank) {
    if (rank < 1) throw BadLetter("rank must be >= 1");
    std::vector<int> out;
    out.reserve(letters.size());
    for (const int x : letters) {
        if (x == 0 || std::abs(x) > rank) throw BadLetter();
        if (!out.empty() && out.back() == -x) {
            out.pop_back();
        } else {
            out.push_back(x);
        }
    }
    return ReducedWord(std::move(out), rank);
}

ReducedWord ReducedWord::inverse() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    for (int& x : out) x = -x;
    return ReducedWord(std::move(out), rank_);
}

ReducedWord ReducedWord::concat(const ReducedWord& rhs) const {
    std::vector<int> out = letters_;
    for (const int x : rhs.letters_) {
        if (!out.empty() && out.back() == -x) {
            out.pop_back();
        } else {
            out.push_back(x);
        }
    }
    return ReducedWord(std::move(out), rank_);
}

std::pair<ReducedWord, ReducedWord> cyclic_reduce(const ReducedWord& w) {
    const auto& l = w.letters();
    size_t lo = 0, hi = l.size();
    while (hi - lo >= 2 && l[lo] == -l[hi - 1]) {
        ++lo;
        --hi;
    }
    ReducedWord core(std::vector<int>(l.begin() + static_cast<long>(lo),
                                      l.begin() + static_cast<long>(hi)),
                     w.rank());
    ReducedWord conj(std::vector<int>(l.begin(), l.begin() + static_cast<long>(lo)), w.rank());
    return {core, conj};
}

bool is_primitive(const ReducedWord& w) {
    if (w.empty() || !w.is_cyclically_reduced()) throw NotCyclicallyReduced();
    const int n = w.size();
    for (int d = 1; d <= n / 2; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (int k = d; k < n; ++k) {
            if (w[k] != w[k - d]) {
                periodic = false;
                break;
            }
        }
        if (periodic) return false;
    }
    return true;
}

std::vector<ConjClass> enumerate_classes(int rank, int max_len) {
    std::vector<ConjClass> out;
    for_each_class(rank, max_len, [&](const int* w, int len) {
        out.push_back(ConjClass{ReducedWord(std::vector<int>(w, w + len), rank)});
    });
    return out;
}

std::vector<ReducedWord> enumerate_coset_reps(int rank, int gen_index, int max_len) {
    if (rank < 1 || gen_index < 1 || gen_index > rank) throw BadLetter("generator index out of range");
    std::vector<ReducedWord> out;
    out.push_back(ReducedWord(rank));  // the trivial coset
    std::vector<int> buf;
    std::vector<int> alphabet;
    for (int r = 0; r < 2 * rank; ++r) {
        alphabet.push_back(r % 2 == 0 ? r / 2 + 1 : -(r / 2 + 1));
    }
    // Reduced words whose last letter is not ±gen_index; words differing only
    // by a trailing power of that generator land in the same coset, so these
    // are exactly one representative each.
    auto dfs = [&](auto&& self, int len) -> void {
        const int pos = static_cast<int>(buf.size());
        if (pos == len) {
            out.push_back(ReducedWord(buf, rank));
            return;
        }
        for (const int x : alphabet) {
            if (!buf.empty() && x == -buf.back()) continue;
            if (pos == len - 1 && std::abs(x) == gen_index) continue;
            buf.push_back(x);
            self(self, len);
            buf.pop_back();
        }
    };
    for (int len = 1; len <= max_len; ++len) dfs(dfs, len);
    return out;
}

}  // namespace szeta
