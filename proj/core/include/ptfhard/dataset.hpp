#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ptfhard {

// Labeled point set with flat row-major storage. Binary layout (little
// endian): magic "PTFD", u32 version, u32 flags, u32 reserved, u64 dim,
// u64 n, then per point dim doubles followed by one sign byte (+1 / -1).
struct Dataset {
    static constexpr std::uint32_t kFlagFolded = 1u << 0;
    static constexpr std::uint32_t kFlagDiscretized = 1u << 1;

    std::uint32_t flags = 0;
    std::size_t dim = 0;
    std::vector<double> values; // n * dim
    std::vector<std::int8_t> signs;

    std::size_t size() const { return signs.size(); }
    bool folded() const { return flags & kFlagFolded; }
    const double* row(std::size_t i) const { return values.data() + i * dim; }

    void append(const std::vector<double>& y, int sign);
};

void write_dataset(const std::string& path, const Dataset& ds);
Dataset read_dataset(const std::string& path);

// CSV export: header x0,...,x{dim-1},sign then one row per point.
std::string dataset_to_csv(const Dataset& ds);

std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t fnv1a64(const std::string& s);

} // namespace ptfhard
