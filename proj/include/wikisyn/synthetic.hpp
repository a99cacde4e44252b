#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

namespace wikisyn {

/// Deterministic synthetic wiki in the normalized dump format.
///
/// Pages are "Page <id>" for ids 1..pages. Every page gets links/pages
/// out-links (the remainder goes to the lowest ids); each target is a
/// uniformly random page with probability 1/2, otherwise the target of a
/// uniformly chosen earlier link, which yields a heavy-tailed in-degree.
/// No self links, no repeated links. Category c > 9 has parent c / 10, so
/// ids 1..9 are the roots. Each page belongs to one to three categories, the
/// first shared by its block of 100 consecutive ids.
///
/// Randomness is mt19937_64 reduced by modulo, so output is identical across
/// standard libraries for the same seed.
struct SyntheticSpec {
    std::size_t pages = 100'000;
    std::size_t links = 1'000'000;
    std::size_t categories = 1'000;
    std::uint64_t seed = 42;
};

struct SyntheticStreams {
    std::ostream& documents;
    std::ostream& links;
    std::ostream& categories;
    std::ostream& members;
};

/// Throws std::invalid_argument when the link count cannot be met without
/// repeats (links > pages * (pages - 1)) or pages is zero with links > 0.
void generate_synthetic(const SyntheticSpec& spec, const SyntheticStreams& out);

}  // namespace wikisyn
