#include "erasure_bandits/delta_star.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eb {

double solve_delta_star(long long num_arms, long long num_agents, long long horizon,
                        std::span<const long long> alphas, double c_prime) {
    if (num_arms < 1 || num_agents < 1 || horizon < 1) {
        throw std::invalid_argument("solve_delta_star: K, M, T must be >= 1");
    }
    if (alphas.size() != static_cast<std::size_t>(num_agents)) {
        throw std::invalid_argument("solve_delta_star: need one alpha per agent");
    }
    if (!(c_prime > 0.0)) {
        throw std::invalid_argument("solve_delta_star: c_prime must be > 0");
    }

    const double t = static_cast<double>(horizon);
    const double log_kmt = std::log(static_cast<double>(num_arms) *
                                    static_cast<double>(num_agents) * t);
    const double target = c_prime * static_cast<double>(num_arms) *
                          std::log(static_cast<double>(num_agents) * t);

    const auto f = [&](double delta) {
        double sum = 0.0;
        for (long long a : alphas) {
            sum += 1.0 / (static_cast<double>(a) + log_kmt / delta);
        }
        return t * delta * sum - target;
    };

    double lo = 1e-12;
    double hi = 1e6;
    if (!(f(lo) < 0.0 && f(hi) > 0.0)) {
        throw std::runtime_error(
            "solve_delta_star: no sign change on [1e-12, 1e6] (f(lo)=" +
            std::to_string(f(lo)) + ", f(hi)=" + std::to_string(f(hi)) + ")");
    }
    while ((hi - lo) > 1e-9 * hi) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace eb
