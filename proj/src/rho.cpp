#include "ubr/rho.hpp"

#include <cassert>
#include <stdexcept>

namespace ubr {

LinComb rho_A(const Perm& pi) {
    int n = pi.n;
    int k = n + 1 - pi.inverse()(1);
    Perm pp;
    pp.n = pi.n;
    for (int i = 1; i <= n; i++) {
        int x;
        if (i < k) x = pi.v[n - k + i] - 1;
        else if (i == k) x = n;
        else x = pi.v[n - i] - 1;
        pp.v[i - 1] = (uint8_t)x;
    }
    long long s = (n - k) % 2 ? -1 : 1;
    LinComb r(pi);
    r.add(theta(k, n) * LinComb(pp), -s);
    return r;
}

LinComb upsilon(int n, int k, const Perm& pi) {
    if (pi.n != n - 1) throw std::invalid_argument("upsilon: pi must lie in S_{n-1}");
    if (k < 0 || k > n - 3) throw std::invalid_argument("upsilon: need 0 <= k <= n-3");
    Perm id = Perm::identity(n);
    LinComb a(chi(1, n - k - 2, n));
    a = a * theta(n - k - 2, n);
    a = a * LinComb(chi(n - k - 2, k + 1, n));
    LinComb f(id);
    f.add(transposition(n - 1, n), -1);
    a = a * f;
    return a * LinComb(sharp(pi));
}

LinComb rho_B(int m, const Perm& pi) {
    int n = pi.n;
    if (n < 3 || n > m) throw std::invalid_argument("rho_B: need 3 <= n <= m");
    if (m >= 5 && pi == Perm::identity(m)) {
        LinComb r(Perm({1, 2, 4, 5, 3}));
        r.add(Perm::identity(5), 1);
        r.add(Perm::identity(4), -2);
        r.add(Perm::identity(3), 1);
        return r;
    }
    if (n == m && pi(1) == 1 && pi(n) != 2 && pi(n) != n) {
        int p = 0;
        while (p < n && pi(p + 1) == p + 1) p++;
        int q = pi.inverse()(p + 1);
        assert(1 <= p && p < q && q <= n && pi(q) == p + 1);
        Perm pp;
        pp.n = (uint8_t)(n - 1);
        for (int i = 1; i <= n - 1; i++) {
            int x;
            if (i == 1 || (n - p < i && i <= n - 1)) x = i;
            else if (i <= q - p) x = pi(q + 1 - i) - p;
            else x = pi(i + p) - p;
            pp.v[i - 1] = (uint8_t)x;
        }
        pp = Perm(pp.values());   // throws if the index formulas ever leave S_{n-1}
        LinComb r(pi);
        r.add(compose(pi, transposition(p, n)), -1);
        r.add(upsilon(n, q - p - 1, pp), (q - p) % 2 ? -1 : 1);
        return r;
    }
    if (n < m && pi(1) == 1) {
        LinComb r(pi);
        r.add(upsilon(n + 1, 0, pi), -1);
        return r;
    }
    return {};
}

}  // namespace ubr
