#include "qldm/rng.hpp"

#include <cmath>
#include <sstream>

#include "qldm/errors.hpp"

namespace qldm {

std::mt19937_64 make_stream(std::uint64_t seed, RngStream stream, std::uint64_t index) {
    // splitmix64 over (seed, stream, index) gives well-separated engine seeds.
    auto mix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    std::uint64_t s = mix(seed);
    s = mix(s ^ static_cast<std::uint64_t>(stream));
    s = mix(s ^ index);
    return std::mt19937_64(s);
}

double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

std::uint64_t bounded(std::mt19937_64& g, std::uint64_t n) {
    if (n == 0) throw ContractError("bounded: n must be > 0");
    // rejection sampling over the top multiple of n
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return x % n;
}

double normal(std::mt19937_64& g) {
    // u1 in (0,1] so log is finite
    const double u1 = (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<double> normal_vector(std::mt19937_64& g, std::size_t n) {
    std::vector<double> out(n);
    for (auto& v : out) v = normal(g);
    return out;
}

void shuffle_indices(std::mt19937_64& g, std::vector<std::size_t>& idx) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded(g, i));
        std::swap(idx[i - 1], idx[j]);
    }
}

std::string serialize_engine(const std::mt19937_64& g) {
    std::ostringstream os;
    os << g;
    return os.str();
}

std::mt19937_64 deserialize_engine(const std::string& text) {
    std::istringstream is(text);
    std::mt19937_64 g;
    is >> g;
    if (is.fail()) throw FormatError("rng: cannot parse engine state");
    return g;
}

}  // namespace qldm
