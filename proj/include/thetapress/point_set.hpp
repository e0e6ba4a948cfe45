#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace thetapress {

/// Subset of the point indices 0..n-1, stored as a blocked 64-bit bitset.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}

    static PointSet full(std::size_t universe)
    {
        PointSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) {
            s.insert(i);
        }
        return s;
    }

    static PointSet of(std::size_t universe, std::span<const std::size_t> elements)
    {
        PointSet s(universe);
        for (auto e : elements) {
            s.insert(e);
        }
        return s;
    }

    static PointSet of(std::size_t universe, std::initializer_list<std::size_t> elements)
    {
        return of(universe, std::span<const std::size_t>(elements.begin(), elements.size()));
    }

    std::size_t universe_size() const { return n_; }

    void insert(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void erase(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool contains(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : words_) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }

    bool empty() const
    {
        for (auto w : words_) {
            if (w != 0) {
                return false;
            }
        }
        return true;
    }

    bool is_subset_of(const PointSet& other) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if ((words_[i] & ~other.words_[i]) != 0) {
                return false;
            }
        }
        return true;
    }

    bool intersects(const PointSet& other) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if ((words_[i] & other.words_[i]) != 0) {
                return true;
            }
        }
        return false;
    }

    PointSet& operator&=(const PointSet& other)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] &= other.words_[i];
        }
        return *this;
    }

    PointSet& operator|=(const PointSet& other)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] |= other.words_[i];
        }
        return *this;
    }

    friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
    friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }

    friend bool operator==(const PointSet&, const PointSet&) = default;
    friend auto operator<=>(const PointSet& a, const PointSet& b)
    {
        if (auto c = a.n_ <=> b.n_; c != 0) {
            return c;
        }
        return a.words_ <=> b.words_;
    }

    std::vector<std::size_t> elements() const
    {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    std::span<const std::uint64_t> words() const { return words_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace thetapress
