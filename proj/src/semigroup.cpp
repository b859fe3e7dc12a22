#include "deltaset/semigroup.hpp"

#include <algorithm>

namespace deltaset {

ValidationReport Semigroup::validate(int size, const std::vector<std::vector<int>>& table,
                                     std::optional<int> identity) {
    ValidationReport r;
    if (size <= 0) {
        r.table_ok = false;
        r.message = "size must be positive";
        return r;
    }
    if (int(table.size()) != size) {
        r.table_ok = false;
        r.message = "table must have exactly size rows";
        return r;
    }
    for (int a = 0; a < size; ++a) {
        if (int(table[a].size()) != size) {
            r.table_ok = false;
            r.message = "row " + std::to_string(a) + " has wrong length";
            return r;
        }
        for (int b = 0; b < size; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= size) {
                r.table_ok = false;
                r.message = "entry table[" + std::to_string(a) + "][" + std::to_string(b) +
                            "]=" + std::to_string(v) + " out of range";
                return r;
            }
        }
    }
    for (int a = 0; a < size && r.associative; ++a)
        for (int b = 0; b < size && r.associative; ++b)
            for (int c = 0; c < size; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]]) {
                    r.associative = false;
                    r.associativity_counterexample = {a, b, c};
                    r.message = "associativity fails at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")";
                    break;
                }
    if (identity) {
        int e = *identity;
        if (e < 0 || e >= size) {
            r.identity_ok = false;
            r.message = "identity index out of range";
        } else {
            for (int a = 0; a < size; ++a)
                if (table[e][a] != a || table[a][e] != a) {
                    r.identity_ok = false;
                    r.message = "declared identity " + std::to_string(e) +
                                " is not two-sided at " + std::to_string(a);
                    break;
                }
        }
    }
    return r;
}

Semigroup Semigroup::from_table(std::string name, std::vector<std::vector<int>> table,
                                std::optional<int> identity) {
    int n = int(table.size());
    auto rep = validate(n, table, identity);
    if (!rep.table_ok) throw malformed_table_error(rep.message);
    if (!rep.ok()) throw invalid_input_error(rep.message);
    Semigroup s;
    s.name_ = std::move(name);
    s.size_ = n;
    s.identity_ = identity;
    s.table_.resize(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s.table_[size_t(a) * n + b] = table[a][b];
    s.compute_group_flag();
    return s;
}

Semigroup Semigroup::truncated_nat(int horizon) {
    if (horizon <= 0) throw invalid_input_error("horizon must be positive");
    Semigroup s;
    s.name_ = "N<" + std::to_string(horizon);
    s.size_ = horizon;
    s.identity_ = 0;
    s.truncated_ = true;
    s.group_ = false;
    return s;
}

void Semigroup::compute_group_flag() {
    group_ = false;
    if (!identity_) return;
    int e = *identity_;
    for (int g = 0; g < size_; ++g) {
        bool has_inverse = false;
        for (int h = 0; h < size_; ++h)
            if (table_[size_t(g) * size_ + h] == e && table_[size_t(h) * size_ + g] == e) {
                has_inverse = true;
                break;
            }
        if (!has_inverse) return;
    }
    group_ = true;
}

int Semigroup::inverse(int g) const {
    if (!group_) throw unsupported_error("inverse requires a group");
    int e = *identity_;
    for (int h = 0; h < size_; ++h)
        if (table_[size_t(g) * size_ + h] == e && table_[size_t(h) * size_ + g] == e) return h;
    throw error("group invariant broken: no inverse found");
}

Semigroup Semigroup::cyclic(int n) {
    if (n <= 0) throw invalid_input_error("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return from_table("Z" + std::to_string(n), std::move(t), 0);
}

Semigroup Semigroup::symmetric_3() {
    // Permutations of {0,1,2} in lexicographic order, product = composition
    // (p*q)(x) = p(q(x)).
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p = {0, 1, 2};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int n = int(perms.size());
    auto index_of = [&](const std::array<int, 3>& q) {
        for (int i = 0; i < n; ++i)
            if (perms[i] == q) return i;
        return -1;
    };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::array<int, 3> q;
            for (int x = 0; x < 3; ++x) q[x] = perms[i][perms[j][x]];
            t[i][j] = index_of(q);
        }
    return from_table("S3", std::move(t), 0);
}

Semigroup Semigroup::dihedral_4() {
    // Elements r^a s^b with a in 0..3, b in 0..1, index a + 4b; s r = r^-1 s.
    auto idx = [](int a, int b) { return a + 4 * b; };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a1 = 0; a1 < 4; ++a1)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int a2 = 0; a2 < 4; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    int sign = b1 ? -1 : 1;
                    int a = ((a1 + sign * a2) % 4 + 4) % 4;
                    int b = (b1 + b2) % 2;
                    t[idx(a1, b1)][idx(a2, b2)] = idx(a, b);
                }
    return from_table("D4", std::move(t), 0);
}

Semigroup Semigroup::quaternion_8() {
    // Index: 0..3 = +1,+i,+j,+k; 4..7 = -1,-i,-j,-k.
    // basis[x][y] = (sign, basis index) for x*y over {1,i,j,k}.
    static const int bidx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int bsgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int sx = x < 4 ? 1 : -1, bx = x % 4;
            int sy = y < 4 ? 1 : -1, by = y % 4;
            int s = sx * sy * bsgn[bx][by];
            int b = bidx[bx][by];
            t[x][y] = s > 0 ? b : b + 4;
        }
    return from_table("Q8", std::move(t), 0);
}

Semigroup Semigroup::direct_product(const Semigroup& a, const Semigroup& b) {
    if (a.is_truncated_nat() || b.is_truncated_nat())
        throw unsupported_error("direct product needs total Cayley tables");
    int na = a.size(), nb = b.size();
    int n = na * nb;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xa = x / nb, xb = x % nb;
            int ya = y / nb, yb = y % nb;
            t[x][y] = a.product(xa, ya) * nb + b.product(xb, yb);
        }
    std::optional<int> e;
    if (a.identity() && b.identity()) e = *a.identity() * nb + *b.identity();
    return from_table(a.name() + "x" + b.name(), std::move(t), e);
}

Semigroup Semigroup::catalog(const std::string& name) {
    if (name == "S3") return symmetric_3();
    if (name == "D4") return dihedral_4();
    if (name == "Q8") return quaternion_8();
    if (name.size() >= 2 && name[0] == 'Z') {
        int n = std::stoi(name.substr(1));
        if (n >= 1 && n <= 16) return cyclic(n);
    }
    throw invalid_input_error("unknown catalog entry: " + name);
}

ElementSet translate_preimage(const Semigroup& s, const ElementSet& a, int g) {
    if (a.universe() != s.size()) throw invalid_input_error("set universe mismatch");
    ElementSet r(s.size());
    for (int h = 0; h < s.size(); ++h) {
        auto p = s.try_product(h, g);
        if (p && a.test(*p)) r.insert(h);
    }
    return r;
}

}  // namespace deltaset
