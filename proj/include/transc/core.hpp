#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace transc {

// Error taxonomy shared by the whole toolkit. The CLI maps these onto
// distinct exit codes.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SamplingExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

enum class TripleKind { InstanceOf, SubClassOf, Relational };

// Relational triple over instance ids. Stored in file order (h, t, r).
struct RelTriple {
    int head = 0;
    int tail = 0;
    int relation = 0;

    friend bool operator==(const RelTriple&, const RelTriple&) = default;
    friend auto operator<=>(const RelTriple&, const RelTriple&) = default;
};

// instanceOf: sub = instance id, sup = concept id.
// subClassOf: sub and sup are both concept ids.
struct IsaTriple {
    int sub = 0;
    int sup = 0;

    friend bool operator==(const IsaTriple&, const IsaTriple&) = default;
    friend auto operator<=>(const IsaTriple&, const IsaTriple&) = default;
};

// Packed set keys. Ids are dense and well below 2^21 at target scale.
inline std::uint64_t pack_rel(const RelTriple& t) {
    return (static_cast<std::uint64_t>(t.head) << 42) |
           (static_cast<std::uint64_t>(t.relation) << 21) |
           static_cast<std::uint64_t>(t.tail);
}
inline std::uint64_t pack_isa(const IsaTriple& t) {
    return (static_cast<std::uint64_t>(t.sub) << 21) |
           static_cast<std::uint64_t>(t.sup);
}

using Rng = std::mt19937_64;

// All randomness flows from one root seed; modules derive their own stream
// with a fixed label so adding a consumer never perturbs the others.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label) {
    std::uint64_t h = root ^ 0x9e3779b97f4a7c15ULL;
    for (char c : label) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    // splitmix64 finalizer
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

inline Rng make_rng(std::uint64_t root, std::string_view label) {
    return Rng(derive_seed(root, label));
}

}  // namespace transc
