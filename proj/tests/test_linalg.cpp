#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "ubr/driver.hpp"
#include "ubr/linalg.hpp"

using namespace ubr;
namespace fs = std::filesystem;

namespace {

std::string tmpfile(const std::string& name) { return (fs::temp_directory_path() / ("ubr_test_" + name)).string(); }

// rank over F_p of a small dense matrix, by the textbook algorithm on long long
uint64_t ref_rank(std::vector<std::vector<long long>> a, long long p) {
    uint64_t r = 0;
    size_t cols = a.empty() ? 0 : a[0].size();
    for (size_t c = 0; c < cols && r < a.size(); c++) {
        size_t piv = r;
        while (piv < a.size() && a[piv][c] % p == 0) piv++;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        long long inv = 1;
        while (a[r][c] * inv % p != 1) inv++;
        for (size_t i = 0; i < a.size(); i++)
            if (i != r) {
                long long f = a[i][c] * inv % p;
                for (size_t j = 0; j < cols; j++) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
            }
        r++;
    }
    return r;
}

void flip_byte(const std::string& path, std::streamoff off) {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(off);
    char c;
    f.get(c);
    c ^= 0x10;
    f.seekp(off);
    f.put(c);
}

}  // namespace

TEST_CASE("trivial ranks") {
    for (uint64_t n : {1, 5, 64, 65, 130}) {
        auto z = rank_nullity(BitMatrix(n, n));
        CHECK(z.rank == 0);
        CHECK(z.nullity == n);
        auto i = rank_nullity(BitMatrix::identity(n));
        CHECK(i.rank == n);
        CHECK(i.nullity == 0);
        BitRowSink s(n);
        for (uint64_t r = 0; r < n; r++) CHECK(s.ingest(BitMatrix::identity(n).row(r), BitMatrix::identity(n).stride()));
        CHECK(s.rank() == n);
    }
}

TEST_CASE("random matrices agree with reference elimination") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 40; it++) {
        uint64_t r = 1 + rng() % 90, c = 1 + rng() % 90;
        for (uint32_t p : {2u, 3u, 7u}) {
            std::vector<std::vector<long long>> a(r, std::vector<long long>(c));
            // low density makes rank deficiency common
            for (auto& row : a)
                for (auto& x : row) x = rng() % 4 == 0 ? (long long)(rng() % p) : 0;
            uint64_t want = ref_rank(a, p);
            if (p == 2) {
                BitMatrix m(r, c);
                std::vector<std::vector<int>> g(r, std::vector<int>(c));
                BitRowSink sink(c);
                for (uint64_t i = 0; i < r; i++)
                    for (uint64_t j = 0; j < c; j++) m.set(i, j, a[i][j]), g[i][j] = (int)a[i][j];
                for (uint64_t i = 0; i < r; i++) sink.ingest(m.row(i), m.stride());
                CHECK(rank_nullity(m).rank == want);
                CHECK(rank_nullity(m.transpose()).rank == want);
                CHECK(naive_rank_f2(g) == want);
                CHECK(sink.rank() == want);
            } else {
                PrimeMatrix m(r, c, p);
                PrimeRowSink sink(c, p);
                for (uint64_t i = 0; i < r; i++)
                    for (uint64_t j = 0; j < c; j++) m.set(i, j, a[i][j]);
                sink.ingest(m);
                CHECK(rank_nullity(m).rank == want);
                CHECK(rank_nullity(m.transpose()).rank == want);
                CHECK(sink.rank() == want);
            }
        }
    }
}

TEST_CASE("sink rejects a row of the wrong width") {
    BitRowSink s(10);
    CHECK_THROWS(s.ingest(std::vector<uint64_t>(2, 0)));
    PrimeRowSink q(10, 3);
    CHECK_THROWS(q.ingest(std::vector<uint32_t>(9, 0)));
}

TEST_CASE("mod_inverse") {
    for (uint32_t p : {2u, 3u, 5u, 2147483647u})
        for (uint32_t a = 1; a < std::min(p, 50u); a++) CHECK((uint64_t)a * mod_inverse(a, p) % p == 1);
}

TEST_CASE("UBRM round trip over F_2") {
    std::mt19937_64 rng(11);
    BitMatrix m(37, 131);
    for (uint64_t i = 0; i < 37; i++)
        for (uint64_t j = 0; j < 131; j++) m.set(i, j, rng() & 1);
    auto path = tmpfile("bits.ubrm");
    save(m, path);
    auto info = read_info(path);
    CHECK(info.version == 1);
    CHECK(info.characteristic == 2);
    CHECK(info.rows == 37);
    CHECK(info.cols == 131);
    // header 24 bytes, each row three words plus a crc
    CHECK(fs::file_size(path) == 24 + 37 * (3 * 8 + 4));
    CHECK(load_bits(path) == m);
    fs::remove(path);
}

TEST_CASE("UBRM round trip over F_3") {
    std::mt19937_64 rng(12);
    PrimeMatrix m(20, 70, 3);
    for (uint64_t i = 0; i < 20; i++)
        for (uint64_t j = 0; j < 70; j++) m.set(i, j, (long long)(rng() % 3));
    auto path = tmpfile("tri.ubrm");
    save(m, path);
    CHECK(read_info(path).characteristic == 3);
    CHECK(load_prime(path) == m);
    CHECK_THROWS_AS(load_bits(path), UbrmError);
    fs::remove(path);
}

TEST_CASE("UBRM corruption is located") {
    BitMatrix m = BitMatrix::identity(100);
    auto path = tmpfile("corrupt.ubrm");
    const std::streamoff row_bytes = 2 * 8 + 4;
    for (int row : {0, 41, 99}) {
        save(m, path);
        flip_byte(path, 24 + row * row_bytes + 3);
        try {
            load_bits(path);
            FAIL("corruption not detected");
        } catch (const UbrmError& e) {
            CHECK(std::string(e.what()).find("row " + std::to_string(row)) != std::string::npos);
        }
    }
    // damage in the checksum itself
    save(m, path);
    flip_byte(path, 24 + 5 * row_bytes + 17);
    CHECK_THROWS_WITH_AS(load_bits(path), doctest::Contains("row 5"), UbrmError);
    // truncation
    save(m, path);
    fs::resize_file(path, 24 + 10 * row_bytes + 7);
    CHECK_THROWS_WITH_AS(load_bits(path), doctest::Contains("truncated"), UbrmError);
    // bad magic
    save(m, path);
    flip_byte(path, 0);
    CHECK_THROWS_AS(read_info(path), UbrmError);
    fs::remove(path);
}

TEST_CASE("the exported rho-bar matrix for A, m = 5") {
    auto path = tmpfile("a5.ubrm");
    UbrConfig cfg;
    cfg.degree = 5;
    cfg.export_path = path;
    auto r = output_upper(cfg);
    CHECK(r.output == 3);
    auto m = load_bits(path);
    CHECK(m.rows() == 5);
    CHECK(m.cols() == 5);
    CHECK(rank_nullity(m).nullity == 3);
    fs::remove(path);
}
