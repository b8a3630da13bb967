#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

// Small helpers for hand-rolled property tests. Seeds are fixed so a failing
// case reproduces from the iteration number alone.
namespace testgen {

class Rng {
public:
    explicit Rng(std::uint64_t seed)
        : eng_(seed)
    {
    }

    std::uint64_t below(std::uint64_t n) { return n ? std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_) : 0; }
    bool coin() { return below(2) == 1; }

    std::string bytes(std::size_t maxLen)
    {
        std::string s(below(maxLen + 1), '\0');
        for (auto& c : s)
            c = static_cast<char>(below(256));
        return s;
    }

    template <typename T>
    const T& pick(const std::vector<T>& items)
    {
        return items[below(items.size())];
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace testgen
