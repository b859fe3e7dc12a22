#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "deltaset/element_set.hpp"
#include "deltaset/errors.hpp"

namespace deltaset {

struct ValidationReport {
    bool table_ok = true;        // entries in range, rows square
    bool associative = true;
    bool identity_ok = true;     // declared identity really is two-sided
    std::optional<std::array<int, 3>> associativity_counterexample;
    std::string message;

    bool ok() const { return table_ok && associative && identity_ok; }
};

/// Finite carrier {0,...,n-1} with an associative product.
///
/// Two flavours share the interface: a dense Cayley table (always total) and
/// a truncated model of (N,+) where a+b is defined only below the horizon.
/// Instances are immutable after construction; every failed law is rejected
/// at construction time, so downstream code never sees an invalid carrier.
class Semigroup {
public:
    /// Builds from a Cayley table, throwing malformed_table_error /
    /// invalid_input_error when validation fails.
    static Semigroup from_table(std::string name, std::vector<std::vector<int>> table,
                                std::optional<int> identity);

    /// {0,...,horizon-1} under addition; products >= horizon are undefined.
    static Semigroup truncated_nat(int horizon);

    /// Validation of raw table data without constructing.
    static ValidationReport validate(int size, const std::vector<std::vector<int>>& table,
                                     std::optional<int> identity);

    // Built-in catalog.
    static Semigroup cyclic(int n);         // Z_n, identity 0
    static Semigroup symmetric_3();         // S_3 as permutation composition
    static Semigroup dihedral_4();          // D_4, 8 elements
    static Semigroup quaternion_8();        // Q_8
    static Semigroup direct_product(const Semigroup& a, const Semigroup& b);
    /// Catalog lookup by name: "Z<n>" (n <= 16), "S3", "D4", "Q8".
    static Semigroup catalog(const std::string& name);

    int size() const { return size_; }
    const std::string& name() const { return name_; }
    std::optional<int> identity() const { return identity_; }
    bool is_truncated_nat() const { return truncated_; }

    /// nullopt exactly when the product is out of window (truncated model).
    std::optional<int> try_product(int a, int b) const {
        if (truncated_) {
            long long s = (long long)a + b;
            if (s >= size_) return std::nullopt;
            return int(s);
        }
        return table_[size_t(a) * size_ + b];
    }

    /// Total product; throws out_of_window_error when undefined.
    int product(int a, int b) const {
        auto p = try_product(a, b);
        if (!p) throw out_of_window_error("product " + std::to_string(a) + "+" +
                                          std::to_string(b) + " exceeds horizon " +
                                          std::to_string(size_));
        return *p;
    }

    bool is_group() const { return group_; }

    /// Two-sided inverse of g; requires a group.
    int inverse(int g) const;

    ElementSet empty_set() const { return ElementSet(size_); }
    ElementSet full_set() const { return ElementSet::full(size_); }

private:
    Semigroup() = default;
    void compute_group_flag();

    std::string name_;
    int size_ = 0;
    std::optional<int> identity_;
    bool truncated_ = false;
    bool group_ = false;
    std::vector<int> table_;  // row-major, empty for the truncated model
};

/// A g^{-1} = {h : h*g in A}. Elements whose product with g is undefined are
/// excluded, never wrapped.
ElementSet translate_preimage(const Semigroup& s, const ElementSet& a, int g);

}  // namespace deltaset
