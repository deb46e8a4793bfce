#include "ptfhard/dataset.hpp"

#include "ptfhard/errors.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace ptfhard {

namespace {
constexpr std::uint32_t kMagic = 0x44465450u; // "PTFD" little endian
constexpr std::uint32_t kVersion = 1;
} // namespace

void Dataset::append(const std::vector<double>& y, int sign) {
    if (dim == 0) dim = y.size();
    if (y.size() != dim) throw DimensionMismatchError("point dimension mismatch");
    if (sign != 1 && sign != -1) throw InvalidInputError("sign must be +1 or -1");
    values.insert(values.end(), y.begin(), y.end());
    signs.push_back(static_cast<std::int8_t>(sign));
}

void write_dataset(const std::string& path, const Dataset& ds) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInputError("cannot open for write: " + path);
    auto put32 = [&](std::uint32_t x) { f.write(reinterpret_cast<const char*>(&x), 4); };
    auto put64 = [&](std::uint64_t x) { f.write(reinterpret_cast<const char*>(&x), 8); };
    put32(kMagic);
    put32(kVersion);
    put32(ds.flags);
    put32(0);
    put64(ds.dim);
    put64(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        f.write(reinterpret_cast<const char*>(ds.row(i)), static_cast<std::streamsize>(ds.dim * 8));
        f.write(reinterpret_cast<const char*>(&ds.signs[i]), 1);
    }
    if (!f) throw InvalidInputError("write failed: " + path);
}

Dataset read_dataset(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidInputError("cannot open: " + path);
    auto get32 = [&]() {
        std::uint32_t x = 0;
        f.read(reinterpret_cast<char*>(&x), 4);
        return x;
    };
    auto get64 = [&]() {
        std::uint64_t x = 0;
        f.read(reinterpret_cast<char*>(&x), 8);
        return x;
    };
    if (get32() != kMagic) throw InvalidInputError("bad dataset magic: " + path);
    if (get32() != kVersion) throw InvalidInputError("unsupported dataset version: " + path);
    Dataset ds;
    ds.flags = get32();
    get32();
    ds.dim = static_cast<std::size_t>(get64());
    const std::uint64_t n = get64();
    ds.values.resize(ds.dim * n);
    ds.signs.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        f.read(reinterpret_cast<char*>(ds.values.data() + i * ds.dim),
               static_cast<std::streamsize>(ds.dim * 8));
        f.read(reinterpret_cast<char*>(&ds.signs[i]), 1);
    }
    if (!f) throw InvalidInputError("truncated dataset: " + path);
    return ds;
}

std::string dataset_to_csv(const Dataset& ds) {
    std::string out;
    for (std::size_t c = 0; c < ds.dim; ++c) {
        out += (c ? ",x" : "x") + std::to_string(c);
    }
    out += ",sign\n";
    char buf[40];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const double* r = ds.row(i);
        for (std::size_t c = 0; c < ds.dim; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", r[c]);
            if (c) out += ',';
            out += buf;
        }
        out += ',';
        out += std::to_string(static_cast<int>(ds.signs[i]));
        out += '\n';
    }
    return out;
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

} // namespace ptfhard
