#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "deltaset/errors.hpp"

namespace deltaset {

/// Subset of a fixed carrier {0, ..., universe-1}, stored as a bit mask.
/// All boolean operations require matching universes and are exact.
class ElementSet {
public:
    ElementSet() = default;

    explicit ElementSet(int universe) : n_(universe), bits_((universe + 63) / 64, 0) {
        if (universe < 0) throw invalid_input_error("ElementSet: negative universe");
    }

    static ElementSet full(int universe) {
        ElementSet s(universe);
        for (auto& b : s.bits_) b = ~uint64_t{0};
        s.clear_tail();
        return s;
    }

    static ElementSet of(int universe, std::initializer_list<int> elems) {
        ElementSet s(universe);
        for (int e : elems) s.insert(e);
        return s;
    }

    static ElementSet from_indices(int universe, const std::vector<int>& elems) {
        ElementSet s(universe);
        for (int e : elems) s.insert(e);
        return s;
    }

    int universe() const { return n_; }

    bool test(int i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }

    void insert(int i) {
        if (i < 0 || i >= n_) throw invalid_input_error("ElementSet: element out of range");
        bits_[i >> 6] |= uint64_t{1} << (i & 63);
    }

    void erase(int i) {
        if (i < 0 || i >= n_) throw invalid_input_error("ElementSet: element out of range");
        bits_[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }

    int count() const {
        int c = 0;
        for (uint64_t b : bits_) c += __builtin_popcountll(b);
        return c;
    }

    bool empty() const {
        for (uint64_t b : bits_)
            if (b) return false;
        return true;
    }

    bool is_full() const { return count() == n_; }

    /// Smallest element, or -1 when empty.
    int first() const {
        for (size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w]) return int(w * 64 + __builtin_ctzll(bits_[w]));
        return -1;
    }

    ElementSet& operator&=(const ElementSet& o) {
        check_universe(o);
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
        return *this;
    }

    ElementSet& operator|=(const ElementSet& o) {
        check_universe(o);
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
        return *this;
    }

    ElementSet& operator-=(const ElementSet& o) {
        check_universe(o);
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
        return *this;
    }

    friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
    friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
    friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

    ElementSet complement() const {
        ElementSet r(n_);
        for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = ~bits_[i];
        r.clear_tail();
        return r;
    }

    ElementSet operator~() const { return complement(); }

    bool operator==(const ElementSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }
    bool operator!=(const ElementSet& o) const { return !(*this == o); }

    bool contains(const ElementSet& sub) const {
        check_universe(sub);
        for (size_t i = 0; i < bits_.size(); ++i)
            if (sub.bits_[i] & ~bits_[i]) return false;
        return true;
    }

    bool intersects(const ElementSet& o) const {
        check_universe(o);
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & o.bits_[i]) return true;
        return false;
    }

    std::vector<int> to_indices() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    template <typename F>
    void for_each(F f) const {
        for (size_t w = 0; w < bits_.size(); ++w) {
            uint64_t b = bits_[w];
            while (b) {
                int i = int(w * 64 + __builtin_ctzll(b));
                f(i);
                b &= b - 1;
            }
        }
    }

    uint64_t hash() const {
        uint64_t h = 1469598103934665603ull ^ uint64_t(n_);
        for (uint64_t b : bits_) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return h;
    }

    const std::vector<uint64_t>& blocks() const { return bits_; }

private:
    void check_universe(const ElementSet& o) const {
        if (n_ != o.n_) throw invalid_input_error("ElementSet: universe mismatch");
    }

    void clear_tail() {
        if (n_ % 64 != 0 && !bits_.empty()) bits_.back() &= (uint64_t{1} << (n_ % 64)) - 1;
    }

    int n_ = 0;
    std::vector<uint64_t> bits_;
};

struct ElementSetHash {
    size_t operator()(const ElementSet& s) const { return size_t(s.hash()); }
};

}  // namespace deltaset
