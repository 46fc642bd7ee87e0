#include "ubr/linalg.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>

namespace ubr {

BitMatrix::BitMatrix(uint64_t rows, uint64_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(uint64_t n) {
    BitMatrix m(n, n);
    for (uint64_t i = 0; i < n; i++) m.set(i, i, true);
    return m;
}

void BitMatrix::set(uint64_t r, uint64_t c, bool v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("BitMatrix::set");
    uint64_t& w = data_[r * stride_ + c / 64];
    uint64_t b = uint64_t(1) << (c % 64);
    w = v ? (w | b) : (w & ~b);
}

void BitMatrix::put_word(uint64_t r, uint64_t c0, uint64_t w) {
    if (!w) return;
    if (c0 + 64 > cols_) {
        uint64_t n = cols_ - c0;
        if (n < 64 && (w >> n)) throw std::out_of_range("BitMatrix::put_word past last column");
    }
    uint64_t* row = &data_[r * stride_];
    uint64_t s = c0 % 64, k = c0 / 64;
    row[k] |= w << s;
    if (s && k + 1 < stride_) row[k + 1] |= w >> (64 - s);
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (uint64_t r = 0; r < rows_; r++)
        for (uint64_t c = 0; c < cols_; c++)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

PrimeMatrix::PrimeMatrix(uint64_t rows, uint64_t cols, uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
    if (p < 2 || p >= (1u << 31)) throw std::invalid_argument("PrimeMatrix: prime out of range");
}

void PrimeMatrix::set(uint64_t r, uint64_t c, long long v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("PrimeMatrix::set");
    long long x = v % (long long)p_;
    data_[r * cols_ + c] = (uint32_t)(x < 0 ? x + p_ : x);
}

PrimeMatrix PrimeMatrix::transpose() const {
    PrimeMatrix t(cols_, rows_, p_);
    for (uint64_t r = 0; r < rows_; r++)
        for (uint64_t c = 0; c < cols_; c++) t.data_[c * rows_ + r] = get(r, c);
    return t;
}

uint32_t mod_inverse(uint32_t a, uint32_t p) {
    uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return (uint32_t)r;
}

RankNullity rank_nullity(const BitMatrix& m) {
    BitMatrix a = m;
    uint64_t W = a.stride(), rank = 0;
    for (uint64_t c = 0; c < a.cols() && rank < a.rows(); c++) {
        uint64_t wi = c / 64, bit = uint64_t(1) << (c % 64);
        uint64_t piv = rank;
        while (piv < a.rows() && !(a.row(piv)[wi] & bit)) piv++;
        if (piv == a.rows()) continue;
        if (piv != rank) std::swap_ranges(a.row(piv), a.row(piv) + W, a.row(rank));
        const uint64_t* pr = a.row(rank);
        for (uint64_t r = rank + 1; r < a.rows(); r++) {
            uint64_t* x = a.row(r);
            if (x[wi] & bit)
                for (uint64_t k = wi; k < W; k++) x[k] ^= pr[k];
        }
        rank++;
    }
    return {rank, m.cols() - rank};
}

RankNullity rank_nullity(const PrimeMatrix& m) {
    PrimeRowSink s(m.cols(), m.prime());
    s.ingest(m);
    return {s.rank(), s.nullity()};
}

uint64_t naive_rank_f2(const std::vector<std::vector<int>>& rows_in) {
    auto rows = rows_in;
    uint64_t rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols; c++) {
        size_t piv = rank;
        while (piv < rows.size() && !rows[piv][c]) piv++;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (size_t r = 0; r < rows.size(); r++)
            if (r != rank && rows[r][c])
                for (size_t k = 0; k < cols; k++) rows[r][k] ^= rows[rank][k];
        rank++;
    }
    return rank;
}

// ---- sinks

BitRowSink::BitRowSink(uint64_t cols) : cols_(cols), words_((cols + 63) / 64), pivot_row_(cols, -1) {}

bool BitRowSink::ingest(const uint64_t* in, uint64_t words) {
    if (words != words_) throw std::invalid_argument("BitRowSink: row width mismatch");
    std::vector<uint64_t> row(in, in + words);
    for (uint64_t k = 0; k < words_; k++) {
        while (row[k]) {
            uint64_t c = k * 64 + __builtin_ctzll(row[k]);
            int64_t b = pivot_row_[c];
            if (b < 0) {
                pivot_row_[c] = (int64_t)basis_.size();
                basis_.push_back(std::move(row));
                return true;
            }
            const auto& br = basis_[b];
            for (uint64_t j = k; j < words_; j++) row[j] ^= br[j];
        }
    }
    return false;
}

bool BitRowSink::ingest(const std::vector<uint64_t>& row) { return ingest(row.data(), row.size()); }

void BitRowSink::ingest(const BitMatrix& m) {
    if (m.cols() != cols_) throw std::invalid_argument("BitRowSink: width mismatch");
    for (uint64_t r = 0; r < m.rows(); r++) ingest(m.row(r), m.stride());
}

PrimeRowSink::PrimeRowSink(uint64_t cols, uint32_t p) : cols_(cols), p_(p), pivot_row_(cols, -1) {}

bool PrimeRowSink::ingest(const std::vector<uint32_t>& in) {
    if (in.size() != cols_) throw std::invalid_argument("PrimeRowSink: row width mismatch");
    std::vector<uint32_t> row(in);
    for (auto& x : row) x %= p_;
    for (uint64_t c = 0; c < cols_; c++) {
        if (!row[c]) continue;
        int64_t b = pivot_row_[c];
        if (b < 0) {
            uint32_t iv = mod_inverse(row[c], p_);
            for (uint64_t j = c; j < cols_; j++) row[j] = (uint32_t)((uint64_t)row[j] * iv % p_);
            pivot_row_[c] = (int64_t)basis_.size();
            basis_.push_back(std::move(row));
            return true;
        }
        uint64_t f = p_ - row[c];
        const auto& br = basis_[b];
        for (uint64_t j = c; j < cols_; j++) row[j] = (uint32_t)((row[j] + f * br[j]) % p_);
    }
    return false;
}

void PrimeRowSink::ingest(const PrimeMatrix& m) {
    if (m.cols() != cols_) throw std::invalid_argument("PrimeRowSink: width mismatch");
    for (uint64_t r = 0; r < m.rows(); r++) ingest(std::vector<uint32_t>(m.row(r), m.row(r) + m.cols()));
}

// ---- UBRM

namespace {

constexpr char kMagic[4] = {'U', 'B', 'R', 'M'};
constexpr uint16_t kVersion = 1;

int entry_bits(uint32_t p) {
    int b = 0;
    while ((uint64_t(1) << b) < p) b++;
    return std::max(b, 1);
}

uint64_t row_words(uint64_t cols, uint32_t p) { return (cols * entry_bits(p) + 63) / 64; }

template <class T>
void put_le(std::string& s, T x) {
    for (size_t i = 0; i < sizeof(T); i++) s.push_back((char)(x >> (8 * i) & 0xff));
}

template <class T>
T get_le(const unsigned char* p) {
    T x = 0;
    for (size_t i = 0; i < sizeof(T); i++) x |= (T)p[i] << (8 * i);
    return x;
}

uint32_t crc_of(const std::string& bytes) {
    return (uint32_t)crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), (uInt)bytes.size());
}

void write_file(const std::string& path, uint16_t ch, uint64_t rows, uint64_t cols,
                const std::vector<std::vector<uint64_t>>& packed) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UbrmError("cannot open " + path + " for writing");
    std::string head(kMagic, 4);
    put_le<uint16_t>(head, kVersion);
    put_le<uint16_t>(head, ch);
    put_le<uint64_t>(head, rows);
    put_le<uint64_t>(head, cols);
    f.write(head.data(), (std::streamsize)head.size());
    for (auto& row : packed) {
        std::string b;
        for (uint64_t w : row) put_le<uint64_t>(b, w);
        uint32_t crc = crc_of(b);
        put_le<uint32_t>(b, crc);
        f.write(b.data(), (std::streamsize)b.size());
    }
    if (!f) throw UbrmError("write failed: " + path);
}

struct RawFile {
    UbrmInfo info;
    std::vector<std::vector<uint64_t>> rows;
};

RawFile read_file(const std::string& path, bool header_only) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UbrmError("cannot open " + path);
    unsigned char head[24];
    if (!f.read(reinterpret_cast<char*>(head), 24)) throw UbrmError("truncated header in " + path);
    if (std::memcmp(head, kMagic, 4) != 0) throw UbrmError("bad magic in " + path);
    RawFile rf;
    rf.info.version = get_le<uint16_t>(head + 4);
    rf.info.characteristic = get_le<uint16_t>(head + 6);
    rf.info.rows = get_le<uint64_t>(head + 8);
    rf.info.cols = get_le<uint64_t>(head + 16);
    if (rf.info.version != kVersion) throw UbrmError("unsupported version " + std::to_string(rf.info.version));
    if (rf.info.characteristic < 2) throw UbrmError("bad characteristic");
    if (header_only) return rf;
    uint64_t W = row_words(rf.info.cols, rf.info.characteristic);
    std::vector<unsigned char> buf(W * 8 + 4);
    rf.rows.reserve(rf.info.rows);
    for (uint64_t r = 0; r < rf.info.rows; r++) {
        if (!f.read(reinterpret_cast<char*>(buf.data()), (std::streamsize)buf.size()))
            throw UbrmError("truncated file at row " + std::to_string(r));
        uint32_t want = get_le<uint32_t>(buf.data() + W * 8);
        uint32_t got = (uint32_t)crc32(0L, buf.data(), (uInt)(W * 8));
        if (want != got) throw UbrmError("checksum mismatch at row " + std::to_string(r));
        std::vector<uint64_t> row(W);
        for (uint64_t k = 0; k < W; k++) row[k] = get_le<uint64_t>(buf.data() + 8 * k);
        rf.rows.push_back(std::move(row));
    }
    if (f.peek() != std::char_traits<char>::eof()) throw UbrmError("trailing bytes after last row");
    return rf;
}

}  // namespace

void save(const BitMatrix& m, const std::string& path) {
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(m.rows());
    for (uint64_t r = 0; r < m.rows(); r++) rows.emplace_back(m.row(r), m.row(r) + m.stride());
    write_file(path, 2, m.rows(), m.cols(), rows);
}

void save(const PrimeMatrix& m, const std::string& path) {
    if (m.prime() > 0xffff) throw UbrmError("characteristic does not fit the header");
    int b = entry_bits(m.prime());
    uint64_t W = row_words(m.cols(), m.prime());
    std::vector<std::vector<uint64_t>> rows;
    for (uint64_t r = 0; r < m.rows(); r++) {
        std::vector<uint64_t> w(W, 0);
        for (uint64_t c = 0; c < m.cols(); c++) {
            uint64_t x = m.get(r, c), pos = c * b;
            w[pos / 64] |= x << (pos % 64);
            if (pos % 64 + b > 64) w[pos / 64 + 1] |= x >> (64 - pos % 64);
        }
        rows.push_back(std::move(w));
    }
    write_file(path, (uint16_t)m.prime(), m.rows(), m.cols(), rows);
}

UbrmInfo read_info(const std::string& path) { return read_file(path, true).info; }

BitMatrix load_bits(const std::string& path) {
    auto rf = read_file(path, false);
    if (rf.info.characteristic != 2) throw UbrmError("not an F_2 matrix");
    BitMatrix m(rf.info.rows, rf.info.cols);
    uint64_t pad = rf.info.cols % 64;
    for (uint64_t r = 0; r < rf.info.rows; r++) {
        if (pad && (rf.rows[r].back() >> pad)) throw UbrmError("nonzero padding at row " + std::to_string(r));
        std::copy(rf.rows[r].begin(), rf.rows[r].end(), m.row(r));
    }
    return m;
}

PrimeMatrix load_prime(const std::string& path) {
    auto rf = read_file(path, false);
    uint32_t p = rf.info.characteristic;
    int b = entry_bits(p);
    uint64_t mask = (uint64_t(1) << b) - 1;
    PrimeMatrix m(rf.info.rows, rf.info.cols, p);
    for (uint64_t r = 0; r < rf.info.rows; r++) {
        const auto& w = rf.rows[r];
        for (uint64_t c = 0; c < rf.info.cols; c++) {
            uint64_t pos = c * b;
            uint64_t x = w[pos / 64] >> (pos % 64);
            if (pos % 64 + b > 64) x |= w[pos / 64 + 1] << (64 - pos % 64);
            x &= mask;
            if (x >= p) throw UbrmError("entry out of range at row " + std::to_string(r));
            m.set(r, c, (long long)x);
        }
    }
    return m;
}

}  // namespace ubr
