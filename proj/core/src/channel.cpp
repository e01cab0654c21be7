#include "erasure_bandits/channel.hpp"

#include <stdexcept>
#include <string>

namespace eb {

ErasureChannel::ErasureChannel(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("ErasureChannel: epsilon " +
                                    std::to_string(epsilon) +
                                    " must lie in [0,1)");
    }
}

}  // namespace eb
