#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlocal {

// Packed bit string of fixed length.  Bit 0 is the first coordinate; when a
// string is built from an integer index, bit i equals (index >> i) & 1.
class BitString {
  public:
    BitString() : len_(0) {}
    explicit BitString(size_t len) : len_(len), blocks_((len + 63) / 64, 0) {}

    static BitString from_index(uint64_t index, size_t len) {
        BitString b(len);
        if (len < 64 && len > 0 && (index >> len) != 0)
            throw std::invalid_argument("index out of range for length");
        if (!b.blocks_.empty()) b.blocks_[0] = index;
        if (len > 64)
            for (size_t i = 1; i < b.blocks_.size(); ++i) b.blocks_[i] = 0;
        b.mask_top();
        return b;
    }

    static BitString from_string(const std::string& s) {
        BitString b(s.size());
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                b.set(i, true);
            else if (s[i] != '0')
                throw std::invalid_argument("bad bit char in: " + s);
        }
        return b;
    }

    size_t size() const { return len_; }

    bool get(size_t i) const {
        return (blocks_[i >> 6] >> (i & 63)) & 1;
    }
    void set(size_t i, bool v) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v)
            blocks_[i >> 6] |= mask;
        else
            blocks_[i >> 6] &= ~mask;
    }

    size_t popcount() const {
        size_t c = 0;
        for (uint64_t w : blocks_) c += std::popcount(w);
        return c;
    }

    BitString operator^(const BitString& o) const {
        if (len_ != o.len_) throw std::invalid_argument("xor length mismatch");
        BitString r = *this;
        for (size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] ^= o.blocks_[i];
        return r;
    }

    BitString concat(const BitString& o) const {
        BitString r(len_ + o.len_);
        for (size_t i = 0; i < len_; ++i) r.set(i, get(i));
        for (size_t i = 0; i < o.len_; ++i) r.set(len_ + i, o.get(i));
        return r;
    }

    // Bits at the given coordinates, in coordinate order.
    BitString project(const std::vector<int>& coords) const {
        BitString r(coords.size());
        for (size_t j = 0; j < coords.size(); ++j) r.set(j, get(static_cast<size_t>(coords[j])));
        return r;
    }

    uint64_t to_ullong() const {
        if (len_ > 64) throw std::invalid_argument("bit string too long for u64");
        return blocks_.empty() ? 0 : blocks_[0];
    }

    std::string to_string() const {
        std::string s(len_, '0');
        for (size_t i = 0; i < len_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitString& a, const BitString& b) {
        return a.len_ == b.len_ && a.blocks_ == b.blocks_;
    }
    friend bool operator<(const BitString& a, const BitString& b) {
        if (a.len_ != b.len_) return a.len_ < b.len_;
        for (size_t i = a.blocks_.size(); i-- > 0;)
            if (a.blocks_[i] != b.blocks_[i]) return a.blocks_[i] < b.blocks_[i];
        return false;
    }

  private:
    void mask_top() {
        if (len_ % 64 != 0 && !blocks_.empty())
            blocks_.back() &= (uint64_t{1} << (len_ % 64)) - 1;
    }

    size_t len_;
    std::vector<uint64_t> blocks_;
};

}  // namespace qlocal
