#pragma once
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace iastab {

// Binary activation vector over N pairs. Bit k set means pair k is scheduled.
// The bitmask and the active-index set are two views of the same decision.
class Decision {
public:
    Decision() = default;
    Decision(int pairs, std::uint32_t mask) : pairs_(pairs), mask_(mask) {
        if (pairs < 0 || pairs > 31)
            throw std::invalid_argument("Decision: pair count must be in [0,31]");
        if (pairs < 31 && (mask >> pairs) != 0)
            throw std::invalid_argument("Decision: mask has bits beyond pair count");
    }

    static Decision empty(int pairs) { return Decision(pairs, 0); }
    static Decision all(int pairs) {
        return Decision(pairs, pairs == 0 ? 0u : (std::uint32_t(-1) >> (32 - pairs)));
    }
    static Decision single(int pairs, int k) { return Decision(pairs, 1u << check_index(pairs, k)); }
    static Decision from_indices(int pairs, std::initializer_list<int> idx) {
        std::uint32_t m = 0;
        for (int k : idx) m |= 1u << check_index(pairs, k);
        return Decision(pairs, m);
    }

    int pairs() const { return pairs_; }
    std::uint32_t mask() const { return mask_; }
    int count() const { return std::popcount(mask_); }
    bool is_empty() const { return mask_ == 0; }
    bool active(int k) const { return (mask_ >> check_index(pairs_, k)) & 1u; }

    std::vector<int> active_indices() const {
        std::vector<int> out;
        out.reserve(count());
        for (int k = 0; k < pairs_; ++k)
            if ((mask_ >> k) & 1u) out.push_back(k);
        return out;
    }

    std::string to_string() const {
        std::string s(pairs_, '0');
        for (int k = 0; k < pairs_; ++k)
            if ((mask_ >> k) & 1u) s[k] = '1';
        return s;
    }

    bool operator==(const Decision&) const = default;

private:
    static int check_index(int pairs, int k) {
        if (k < 0 || k >= pairs) throw std::invalid_argument("Decision: pair index out of range");
        return k;
    }
    int pairs_ = 0;
    std::uint32_t mask_ = 0;
};

// Deterministic tie order for schedulers: fewer active pairs first, then the
// decision containing the smallest differing pair index.
inline bool decision_precedes(std::uint32_t a, std::uint32_t b, int pairs) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca < cb;
    for (int k = 0; k < pairs; ++k) {
        const bool ia = (a >> k) & 1u, ib = (b >> k) & 1u;
        if (ia != ib) return ia;
    }
    return false;
}

} // namespace iastab
