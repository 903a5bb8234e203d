#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace spikeadd {

/// Fixed-width bit sequence, index 0 is the least significant bit.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t width) : bits_(width, 0) {}
    BitVector(std::initializer_list<int> bits);

    [[nodiscard]] std::size_t width() const { return bits_.size(); }
    [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i] != 0; }
    [[nodiscard]] bool test(std::size_t i) const { return bits_.at(i) != 0; }
    void set(std::size_t i, bool value = true) { bits_.at(i) = value ? 1 : 0; }

    [[nodiscard]] std::size_t popcount() const;
    [[nodiscard]] bool none() const { return popcount() == 0; }

    /// Indices of the set bits in ascending order.
    [[nodiscard]] std::vector<std::uint32_t> ones() const;

    /// Most significant bit first, e.g. "0101".
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace spikeadd
