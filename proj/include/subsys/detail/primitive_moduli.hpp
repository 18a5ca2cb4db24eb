#pragma once
#include <cstdint>

// Canonical moduli for extension fields GF(p^m), m >= 2, p^m <= 65536.
// Each entry stores the monic polynomial encoded in base p, low coefficient
// first (the value includes the leading x^m term).  The polynomial is the
// smallest such encoding whose root generates the full multiplicative group,
// so every build of the library agrees on the field representation.
// Degree-1 moduli (prime fields) are derived at construction from the
// smallest primitive root mod p and are not tabulated.

namespace subsys::detail {

struct ModulusEntry {
    std::uint16_t p;
    std::uint16_t m;
    std::uint64_t poly; // base-p encoding, includes leading term
};

inline constexpr ModulusEntry kPrimitiveModuli[] = {
    {2u, 2u, 7ull}, {2u, 3u, 11ull}, {2u, 4u, 19ull}, {2u, 5u, 37ull},
    {2u, 6u, 67ull}, {2u, 7u, 131ull}, {2u, 8u, 285ull}, {2u, 9u, 529ull},
    {2u, 10u, 1033ull}, {2u, 11u, 2053ull}, {2u, 12u, 4179ull}, {2u, 13u, 8219ull},
    {2u, 14u, 16427ull}, {2u, 15u, 32771ull}, {2u, 16u, 65581ull}, {3u, 2u, 14ull},
    {3u, 3u, 34ull}, {3u, 4u, 86ull}, {3u, 5u, 250ull}, {3u, 6u, 734ull},
    {3u, 7u, 2203ull}, {3u, 8u, 6590ull}, {3u, 9u, 19747ull}, {3u, 10u, 59081ull},
    {5u, 2u, 32ull}, {5u, 3u, 142ull}, {5u, 4u, 662ull}, {5u, 5u, 3147ull},
    {5u, 6u, 15632ull}, {7u, 2u, 59ull}, {7u, 3u, 366ull}, {7u, 4u, 2476ull},
    {7u, 5u, 16818ull}, {11u, 2u, 139ull}, {11u, 3u, 1346ull}, {11u, 4u, 14654ull},
    {13u, 2u, 184ull}, {13u, 3u, 2216ull}, {13u, 4u, 28745ull}, {17u, 2u, 309ull},
    {17u, 3u, 4933ull}, {19u, 2u, 382ull}, {19u, 3u, 6882ull}, {23u, 2u, 559ull},
    {23u, 3u, 12193ull}, {29u, 2u, 873ull}, {29u, 3u, 24429ull}, {31u, 2u, 1004ull},
    {31u, 3u, 29836ull}, {37u, 2u, 1411ull}, {37u, 3u, 50703ull}, {41u, 2u, 1734ull},
    {43u, 2u, 1895ull}, {47u, 2u, 2269ull}, {53u, 2u, 2867ull}, {59u, 2u, 3542ull},
    {61u, 2u, 3784ull}, {67u, 2u, 4568ull}, {71u, 2u, 5123ull}, {73u, 2u, 5413ull},
    {79u, 2u, 6323ull}, {83u, 2u, 6974ull}, {89u, 2u, 8016ull}, {97u, 2u, 9511ull},
    {101u, 2u, 10305ull}, {103u, 2u, 10717ull}, {107u, 2u, 11561ull}, {109u, 2u, 11996ull},
    {113u, 2u, 12892ull}, {127u, 2u, 16259ull}, {131u, 2u, 17306ull}, {137u, 2u, 18912ull},
    {139u, 2u, 19462ull}, {149u, 2u, 22353ull}, {151u, 2u, 22964ull}, {157u, 2u, 24812ull},
    {163u, 2u, 26743ull}, {167u, 2u, 28061ull}, {173u, 2u, 30107ull}, {179u, 2u, 32227ull},
    {181u, 2u, 32960ull}, {191u, 2u, 36691ull}, {193u, 2u, 37447ull}, {197u, 2u, 39009ull},
    {199u, 2u, 39806ull}, {211u, 2u, 44735ull}, {223u, 2u, 49957ull}, {227u, 2u, 51761ull},
    {229u, 2u, 52676ull}, {233u, 2u, 54525ull}, {239u, 2u, 57373ull}, {241u, 2u, 58335ull},
    {251u, 2u, 63271ull},
};

inline constexpr int kPrimitiveModulusCount = 93;

} // namespace subsys::detail
