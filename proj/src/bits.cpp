#include "spikeadd/bits.hpp"

#include <algorithm>

namespace spikeadd {

BitVector::BitVector(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) {
        bits_.push_back(b != 0 ? 1 : 0);
    }
}

std::size_t BitVector::popcount() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::uint32_t> BitVector::ones() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] != 0) {
            out.push_back(static_cast<std::uint32_t>(i));
        }
    }
    return out;
}

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto it = bits_.rbegin(); it != bits_.rend(); ++it) {
        s.push_back(*it != 0 ? '1' : '0');
    }
    return s;
}

}  // namespace spikeadd
