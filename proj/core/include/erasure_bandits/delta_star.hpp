#pragma once

#include <span>

namespace eb {

// Root of f(delta) = T*delta*sum_m 1/(alpha_m + log(K*M*T)/delta)
//                    - c_prime*K*log(M*T)
// on (0, inf), located by bisection to 1e-9 relative width. f is strictly
// increasing in delta, so the root is unique. This is the gap value that
// balances the two terms of the gap-independent regret bound.
double solve_delta_star(long long num_arms, long long num_agents, long long horizon,
                        std::span<const long long> alphas, double c_prime);

}  // namespace eb
