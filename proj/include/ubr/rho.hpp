#pragma once
#include "ubr/perm.hpp"

namespace ubr {

// rho_A(pi) = pi - (-1)^{n-k} Theta_k pi'
LinComb rho_A(const Perm& pi);

// chi_{1,n-k-2} Theta_{n-k-2} chi_{n-k-2,k+1} (1 - tau_{n-1}) pi^#, pi in S_{n-1}
LinComb upsilon(int n, int k, const Perm& pi);

// null element for algorithm B in degree m, pi in S_n with 3 <= n <= m
LinComb rho_B(int m, const Perm& pi);

}  // namespace ubr
