#pragma once
#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ubr {

constexpr int kMaxN = 16;

// 1-based permutation stored as its value sequence; v[i-1] = pi(i)
struct Perm {
    uint8_t n = 0;
    std::array<uint8_t, kMaxN> v{};

    Perm() = default;
    explicit Perm(const std::vector<int>& vals);   // checks bijectivity
    static Perm identity(int n);

    int operator()(int i) const { return v[i - 1]; }
    int size() const { return n; }
    Perm inverse() const;
    std::vector<int> values() const { return {v.begin(), v.begin() + n}; }
    std::string str() const;

    bool operator==(const Perm& o) const { return n == o.n && v == o.v; }
    // smaller size first, then lexicographic
    std::strong_ordering operator<=>(const Perm& o) const {
        if (n != o.n) return n <=> o.n;
        for (int i = 0; i < n; i++)
            if (v[i] != o.v[i]) return v[i] <=> o.v[i];
        return std::strong_ordering::equal;
    }
};

int compare(const Perm& a, const Perm& b);   // -1, 0, 1

// (ab)(i) = b(a(i))
Perm compose(const Perm& a, const Perm& b);
Perm transposition(int i, int n);
Perm nu(int n);     // i -> i+1 mod n
Perm mu(int n);     // i -> n+1-i
Perm chi(int r, int s, int n);
Perm sharp(const Perm& p);

// lexicographic rank inside S_n and back
uint64_t perm_rank(const Perm& p);
Perm perm_unrank(uint64_t r, int n);
uint64_t factorial(int n);

struct FieldSpec {
    int characteristic = 2;    // 0 = integers
    explicit FieldSpec(int p = 2);
    long long reduce(long long x) const;
};

// finite sum of permutations with integer coefficients, kept sorted and without zeros
class LinComb {
public:
    using Term = std::pair<Perm, long long>;
    LinComb() = default;
    LinComb(const Perm& p, long long c = 1);

    void add(const Perm& p, long long c);
    void add(const LinComb& o, long long f = 1);
    LinComb operator*(const LinComb& o) const;   // group ring product, sizes must agree
    LinComb& operator*=(long long f);
    LinComb reduced(const FieldSpec& f) const;

    const std::vector<Term>& terms() const& { normalize(); return t_; }
    // by value on temporaries, so range-for over apply_move(...).terms() is safe
    std::vector<Term> terms() && { normalize(); return std::move(t_); }
    bool empty() const { normalize(); return t_.empty(); }
    size_t size() const { normalize(); return t_.size(); }
    long long coeff(const Perm& p) const;
    long long augmentation() const;
    std::string str() const;
    bool operator==(const LinComb& o) const { return terms() == o.terms(); }

private:
    void normalize() const;
    mutable std::vector<Term> t_;
    mutable bool dirty_ = false;
};

LinComb theta(int k, int n);

struct OrbitMin {
    Perm perm;
    int sign;
    int a, b, c;
};
// action (a,b,c).pi = nu^a mu^b pi nu^c
Perm orbit_act(int a, int b, int c, const Perm& p);
OrbitMin orbit_minimize(const Perm& p);

}  // namespace ubr
