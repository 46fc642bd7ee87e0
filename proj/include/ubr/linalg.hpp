#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ubr {

struct RankNullity {
    uint64_t rank = 0;
    uint64_t nullity = 0;
};

// row-major, 64-bit words, padding bits kept zero
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(uint64_t rows, uint64_t cols);
    static BitMatrix identity(uint64_t n);

    uint64_t rows() const { return rows_; }
    uint64_t cols() const { return cols_; }
    uint64_t stride() const { return stride_; }
    bool get(uint64_t r, uint64_t c) const { return data_[r * stride_ + c / 64] >> (c % 64) & 1; }
    void set(uint64_t r, uint64_t c, bool v);
    void flip(uint64_t r, uint64_t c) { data_[r * stride_ + c / 64] ^= uint64_t(1) << (c % 64); }
    uint64_t* row(uint64_t r) { return &data_[r * stride_]; }
    const uint64_t* row(uint64_t r) const { return &data_[r * stride_]; }
    // OR a word of bits into columns [c0, c0+64) of row r
    void put_word(uint64_t r, uint64_t c0, uint64_t w);
    BitMatrix transpose() const;
    bool operator==(const BitMatrix& o) const = default;

private:
    uint64_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<uint64_t> data_;
};

// entries mod p, p prime < 2^31
class PrimeMatrix {
public:
    PrimeMatrix() = default;
    PrimeMatrix(uint64_t rows, uint64_t cols, uint32_t p);
    uint64_t rows() const { return rows_; }
    uint64_t cols() const { return cols_; }
    uint32_t prime() const { return p_; }
    uint32_t get(uint64_t r, uint64_t c) const { return data_[r * cols_ + c]; }
    void set(uint64_t r, uint64_t c, long long v);
    uint32_t* row(uint64_t r) { return &data_[r * cols_]; }
    const uint32_t* row(uint64_t r) const { return &data_[r * cols_]; }
    PrimeMatrix transpose() const;
    bool operator==(const PrimeMatrix& o) const = default;

private:
    uint64_t rows_ = 0, cols_ = 0;
    uint32_t p_ = 2;
    std::vector<uint32_t> data_;
};

RankNullity rank_nullity(const BitMatrix& m);
RankNullity rank_nullity(const PrimeMatrix& m);
// plain reference elimination on a bool grid, for testing the packed path
uint64_t naive_rank_f2(const std::vector<std::vector<int>>& rows);

// incremental elimination: keeps only a reduced basis
class BitRowSink {
public:
    explicit BitRowSink(uint64_t cols);
    uint64_t cols() const { return cols_; }
    uint64_t rank() const { return basis_.size(); }
    uint64_t nullity() const { return cols_ - rank(); }
    // returns true if the row raised the rank
    bool ingest(const std::vector<uint64_t>& row);
    bool ingest(const uint64_t* row, uint64_t words);
    void ingest(const BitMatrix& m);

private:
    uint64_t cols_, words_;
    std::vector<std::vector<uint64_t>> basis_;
    std::vector<int64_t> pivot_row_;   // by column
};

class PrimeRowSink {
public:
    PrimeRowSink(uint64_t cols, uint32_t p);
    uint64_t cols() const { return cols_; }
    uint64_t rank() const { return basis_.size(); }
    uint64_t nullity() const { return cols_ - rank(); }
    bool ingest(const std::vector<uint32_t>& row);
    void ingest(const PrimeMatrix& m);

private:
    uint64_t cols_;
    uint32_t p_;
    std::vector<std::vector<uint32_t>> basis_;   // normalized, pivot coefficient 1
    std::vector<int64_t> pivot_row_;
};

uint32_t mod_inverse(uint32_t a, uint32_t p);

// UBRM files: "UBRM", u16 version, u16 characteristic, u64 rows, u64 cols, then
// per row its entries packed little-endian into u64 words (1 bit each over F_2,
// ceil(log2 p) bits otherwise) followed by a u32 CRC32 of those bytes
struct UbrmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UbrmInfo {
    uint16_t version = 0;
    uint16_t characteristic = 0;
    uint64_t rows = 0, cols = 0;
};

void save(const BitMatrix& m, const std::string& path);
void save(const PrimeMatrix& m, const std::string& path);
UbrmInfo read_info(const std::string& path);
BitMatrix load_bits(const std::string& path);
PrimeMatrix load_prime(const std::string& path);

}  // namespace ubr
