#include <doctest.h>

#include <algorithm>
#include <map>

#include "ubr/reduce.hpp"

using namespace ubr;

namespace {

Perm P(std::vector<int> v) { return Perm(v); }

// normal form by plain recursion on delta, coefficients over Z
std::map<Perm, LinComb> memo[2];
LinComb normal_form(Algorithm alg, const Perm& p) {
    auto& mm = memo[alg == Algorithm::B];
    auto it = mm.find(p);
    if (it != mm.end()) return it->second;
    LinComb out;
    if (is_irreducible(alg, p)) out = LinComb(p);
    else
        for (auto& [t, c] : delta(alg, p).terms()) out.add(normal_form(alg, t), c);
    mm[p] = out;
    return out;
}

}  // namespace

TEST_CASE("reducing moves on small permutations") {
    CHECK_FALSE(smallest_reducing_move_A(Perm::identity(2)).has_value());
    CHECK_FALSE(smallest_reducing_move_A(Perm::identity(5)).has_value());
    auto mv = smallest_reducing_move_A(P({2, 1}));
    REQUIRE(mv.has_value());
    CHECK(mv->kind == Move::II);
    CHECK(mv->index == 1);
    CHECK(apply_move(P({2, 1}), *mv).empty());
    CHECK(delta(Algorithm::A, P({2, 1})).empty());
    CHECK(delta(Algorithm::A, Perm::identity(2)) == LinComb(Perm::identity(2)));

    auto mb = smallest_reducing_move_B(P({2, 1, 3}));
    REQUIRE(mb.has_value());
    CHECK(mb->kind == Move::Iprime);
    CHECK(apply_move(P({2, 1, 3}), *mb) == LinComb(Perm::identity(3), -1));

    // an inapplicable move is an error
    Move two{Move::II};
    two.index = 1;
    CHECK_THROWS(apply_move(Perm::identity(3), two));
}

TEST_CASE("every move strictly descends") {
    for (Algorithm alg : {Algorithm::A, Algorithm::B})
        for (int n = alg == Algorithm::A ? 2 : 3; n <= 6; n++) {
            std::vector<int> v(n);
            for (int i = 0; i < n; i++) v[i] = i + 1;
            do {
                Perm p = P(v);
                auto mv = alg == Algorithm::A ? smallest_reducing_move_A(p) : smallest_reducing_move_B(p);
                if (!mv) continue;
                for (auto& [t, c] : apply_move(p, *mv).terms()) CHECK(t < p);
            } while (std::next_permutation(v.begin(), v.end()));
        }
}

TEST_CASE("move I is conjugation by the long cycle") {
    // pi(n) = n; the image is (1, pi(1)+1, ..., pi(n-1)+1), reading nu pi nu^{-1} by hand
    for (int n = 2; n <= 5; n++) {
        std::vector<int> v(n - 1);
        for (int i = 0; i < n - 1; i++) v[i] = i + 1;
        do {
            std::vector<int> w = v;
            w.push_back(n);
            Move one{Move::I};
            std::vector<int> want = {1};
            for (int x : v) want.push_back(x + 1);
            if (want == w) continue;
            CHECK(apply_move(P(w), one) == LinComb(P(want)));
        } while (std::next_permutation(v.begin(), v.end()));
    }
}

TEST_CASE("universes") {
    Universe a(Algorithm::A, 5);
    CHECK(a.size() == 24);
    CHECK(a.min_n() == 4);
    Universe b(Algorithm::B, 5);
    CHECK(b.size() == 6 + 24 + 120);
    for (uint64_t i = 0; i < b.size(); i++) CHECK(b.index(b.at(i)) == i);
    for (uint64_t i = 1; i < b.size(); i++) CHECK(b.at(i - 1) < b.at(i));
    CHECK_THROWS(b.index(Perm::identity(2)));
}

TEST_CASE("normal form tables match plain recursion") {
    for (Algorithm alg : {Algorithm::A, Algorithm::B}) {
        int m = alg == Algorithm::A ? 6 : 5;
        Universe u(alg, m);
        DeltaCache dc(u);
        auto& irr = dc.irreducibles();
        for (int p : {2, 3}) {
            for (uint64_t lo = 0; lo < irr.size(); lo += 5) {
                NormalFormTable tab(dc, p, lo, 5);
                for (uint64_t idx = 0; idx < u.size(); idx++) {
                    LinComb nf = normal_form(alg, u.at(idx)).reduced(FieldSpec(p));
                    for (int k = 0; k < 5 && lo + k < irr.size(); k++) {
                        long long want = nf.coeff(u.at(irr[lo + k]));
                        if (p == 2) CHECK(((tab.bits(idx) >> k) & 1) == (uint64_t)want);
                        else CHECK(tab.digits(idx)[k] == want);
                    }
                }
            }
        }
    }
}

TEST_CASE("table for algorithm A, m = 3") {
    Universe u(Algorithm::A, 3);
    DeltaCache dc(u);
    REQUIRE(dc.irreducible_count() == 1);
    NormalFormTable t(dc, 2, 0, 1);
    CHECK(t.bits(u.index(Perm::identity(2))) == 1);
    CHECK(t.bits(u.index(P({2, 1}))) == 0);
}

TEST_CASE("memory budget is enforced with a usable hint") {
    Universe u(Algorithm::A, 7);
    DeltaCache dc(u);
    try {
        NormalFormTable t(dc, 3, 0, 16, 100);
        FAIL("expected a budget error");
    } catch (const std::length_error& e) {
        CHECK(std::string(e.what()).find("width") != std::string::npos);
    }
}
