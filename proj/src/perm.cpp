#include "ubr/perm.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ubr {

Perm::Perm(const std::vector<int>& vals) {
    if (vals.empty() || (int)vals.size() > kMaxN) throw std::invalid_argument("perm size out of range");
    n = (uint8_t)vals.size();
    uint32_t seen = 0;
    for (int i = 0; i < n; i++) {
        int x = vals[i];
        if (x < 1 || x > n || (seen >> x & 1)) throw std::invalid_argument("not a permutation");
        seen |= 1u << x;
        v[i] = (uint8_t)x;
    }
}

Perm Perm::identity(int n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("perm size out of range");
    Perm p;
    p.n = (uint8_t)n;
    for (int i = 0; i < n; i++) p.v[i] = (uint8_t)(i + 1);
    return p;
}

Perm Perm::inverse() const {
    Perm r;
    r.n = n;
    for (int i = 0; i < n; i++) r.v[v[i] - 1] = (uint8_t)(i + 1);
    return r;
}

std::string Perm::str() const {
    std::string s = "(";
    for (int i = 0; i < n; i++) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

int compare(const Perm& a, const Perm& b) {
    auto c = a <=> b;
    return c < 0 ? -1 : c > 0 ? 1 : 0;
}

Perm compose(const Perm& a, const Perm& b) {
    if (a.n != b.n) throw std::invalid_argument("compose: size mismatch");
    Perm r;
    r.n = a.n;
    for (int i = 0; i < a.n; i++) r.v[i] = b.v[a.v[i] - 1];
    return r;
}

Perm transposition(int i, int n) {
    if (i < 1 || i >= n) throw std::invalid_argument("transposition index out of range");
    Perm p = Perm::identity(n);
    std::swap(p.v[i - 1], p.v[i]);
    return p;
}

Perm nu(int n) {
    Perm p = Perm::identity(n);
    for (int i = 0; i < n; i++) p.v[i] = (uint8_t)(i + 1 < n ? i + 2 : 1);
    return p;
}

Perm mu(int n) {
    Perm p = Perm::identity(n);
    for (int i = 0; i < n; i++) p.v[i] = (uint8_t)(n - i);
    return p;
}

Perm chi(int r, int s, int n) {
    if (r < 0 || s < 0 || r + s > n) throw std::invalid_argument("chi: need r+s <= n");
    Perm p = Perm::identity(n);
    for (int i = 1; i <= n; i++) {
        int x = i <= r ? i + s : i <= r + s ? i - r : i;
        p.v[i - 1] = (uint8_t)x;
    }
    return p;
}

// doubles the strand ending at pi(n-1); result in S_n
Perm sharp(const Perm& p) {
    int m = p.n;
    if (m + 1 > kMaxN) throw std::invalid_argument("sharp: too large");
    int c = p.v[m - 1];
    Perm r;
    r.n = (uint8_t)(m + 1);
    for (int i = 0; i < m; i++) r.v[i] = (uint8_t)(p.v[i] <= c ? p.v[i] : p.v[i] + 1);
    r.v[m] = (uint8_t)(c + 1);
    return r;
}

uint64_t factorial(int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; i++) f *= (uint64_t)i;
    return f;
}

uint64_t perm_rank(const Perm& p) {
    uint64_t r = 0;
    uint32_t used = 0;
    for (int i = 0; i < p.n; i++) {
        int x = p.v[i];
        int smaller = __builtin_popcount(~used & ((1u << x) - 2));   // unused values below x
        r = r * (uint64_t)(p.n - i) + (uint64_t)smaller;
        used |= 1u << x;
    }
    return r;
}

Perm perm_unrank(uint64_t r, int n) {
    Perm p;
    p.n = (uint8_t)n;
    int digits[kMaxN];
    for (int i = n - 1; i >= 0; i--) {
        digits[i] = (int)(r % (uint64_t)(n - i));
        r /= (uint64_t)(n - i);
    }
    uint32_t used = 0;
    for (int i = 0; i < n; i++) {
        int k = digits[i];
        for (int x = 1; x <= n; x++) {
            if (used >> x & 1) continue;
            if (k-- == 0) {
                p.v[i] = (uint8_t)x;
                used |= 1u << x;
                break;
            }
        }
    }
    return p;
}

static bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; d++)
        if (p % d == 0) return false;
    return true;
}

FieldSpec::FieldSpec(int p) : characteristic(p) {
    if (p != 0 && !is_prime(p)) throw std::invalid_argument("field characteristic must be 0 or prime");
}

long long FieldSpec::reduce(long long x) const {
    if (characteristic == 0) return x;
    long long r = x % characteristic;
    return r < 0 ? r + characteristic : r;
}

// ---- LinComb

LinComb::LinComb(const Perm& p, long long c) {
    if (c) t_.push_back({p, c});
}

void LinComb::normalize() const {
    if (!dirty_) return;
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    size_t w = 0;
    for (size_t i = 0; i < t_.size();) {
        size_t j = i;
        long long c = 0;
        while (j < t_.size() && t_[j].first == t_[i].first) c += t_[j++].second;
        if (c) t_[w++] = {t_[i].first, c};
        i = j;
    }
    t_.resize(w);
    dirty_ = false;
}

void LinComb::add(const Perm& p, long long c) {
    if (!c) return;
    t_.push_back({p, c});
    dirty_ = true;
}

void LinComb::add(const LinComb& o, long long f) {
    if (!f) return;
    for (auto& [p, c] : o.terms()) t_.push_back({p, c * f});
    dirty_ = true;
}

LinComb LinComb::operator*(const LinComb& o) const {
    LinComb r;
    for (auto& [p, c] : terms())
        for (auto& [q, d] : o.terms()) r.t_.push_back({compose(p, q), c * d});
    r.dirty_ = true;
    return r;
}

LinComb& LinComb::operator*=(long long f) {
    for (auto& t : t_) t.second *= f;
    if (!f) t_.clear();
    return *this;
}

LinComb LinComb::reduced(const FieldSpec& f) const {
    LinComb r;
    for (auto& [p, c] : terms()) r.add(p, f.reduce(c));
    r.normalize();
    return r;
}

long long LinComb::coeff(const Perm& p) const {
    for (auto& [q, c] : terms())
        if (q == p) return c;
    return 0;
}

long long LinComb::augmentation() const {
    long long s = 0;
    for (auto& t : terms()) s += t.second;
    return s;
}

std::string LinComb::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [p, c] : terms()) {
        if (c < 0) os << (first ? "-" : " - ");
        else if (!first) os << " + ";
        long long a = c < 0 ? -c : c;
        if (a != 1) os << a << "*";
        os << p.str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// Theta_k = prod_{i=1}^{k-1} (1 - tau_{k-1} tau_{k-2} ... tau_i), left to right
LinComb theta(int k, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("theta: need 1 <= k <= n");
    Perm id = Perm::identity(n);
    LinComb r(id);
    for (int i = 1; i < k; i++) {
        Perm s = id;
        for (int j = 1; j <= k - i; j++) s = compose(s, transposition(k - j, n));
        LinComb f(id);
        f.add(s, -1);
        r = r * f;
    }
    return r;
}

// (nu^a mu^b pi nu^c)(i) = nu^c(pi(mu^b(nu^a(i))))
Perm orbit_act(int a, int b, int c, const Perm& p) {
    int n = p.n;
    Perm r;
    r.n = p.n;
    for (int i = 1; i <= n; i++) {
        int j = (i - 1 + a) % n + 1;
        if (b) j = n + 1 - j;
        int x = p.v[j - 1];
        r.v[i - 1] = (uint8_t)((x - 1 + c) % n + 1);
    }
    return r;
}

// For fixed (a,b) only one c can bring a 1 to the front, so 2n candidates suffice.
OrbitMin orbit_minimize(const Perm& p) {
    int n = p.n;
    OrbitMin best{p, 1, 0, 0, 0};
    bool have = false;
    for (int b = 0; b < 2; b++) {
        for (int a = 0; a < n; a++) {
            int j = a % n + 1;
            if (b) j = n + 1 - j;
            int c = (n + 1 - p.v[j - 1]) % n;
            Perm q = orbit_act(a, b, c, p);
            if (!have || q < best.perm) {
                best = {q, (n * b) % 2 ? -1 : 1, a, b, c};
                have = true;
            }
        }
    }
    return best;
}

}  // namespace ubr
