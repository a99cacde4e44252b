#include "wikisyn/synthetic.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace wikisyn {

void generate_synthetic(const SyntheticSpec& spec, const SyntheticStreams& out) {
    const auto pages = spec.pages;
    if (pages == 0 && spec.links > 0) throw std::invalid_argument("links requested for an empty corpus");
    if (pages > 0 && spec.links > pages * (pages - 1)) throw std::invalid_argument("too many links for page count");

    std::mt19937_64 rng(spec.seed);
    auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

    out.documents << "# id\ttitle\n";
    for (std::size_t i = 1; i <= pages; ++i) out.documents << i << "\tPage " << i << '\n';

    out.links << "# src\tdst\n";
    std::vector<std::uint32_t> targets;
    targets.reserve(spec.links);
    std::vector<std::uint32_t> chosen;
    const auto per_page = pages == 0 ? 0 : spec.links / pages;
    const auto extra = pages == 0 ? 0 : spec.links % pages;
    for (std::size_t src = 1; src <= pages; ++src) {
        const auto degree = per_page + (src <= extra ? 1 : 0);
        chosen.clear();
        while (chosen.size() < degree) {
            std::size_t dst = 0;
            if (!targets.empty() && (rng() & 1U)) {
                dst = targets[pick(targets.size())];
            } else {
                dst = 1 + pick(pages);
            }
            if (dst == src || std::find(chosen.begin(), chosen.end(), dst) != chosen.end()) continue;
            chosen.push_back(static_cast<std::uint32_t>(dst));
        }
        for (auto dst : chosen) {
            out.links << src << '\t' << dst << '\n';
            targets.push_back(dst);
        }
    }

    out.categories << "# cat_id\tname\tparent_id\n";
    for (std::size_t c = 1; c <= spec.categories; ++c) {
        out.categories << c << "\tCategory " << c << '\t';
        if (c > 9) out.categories << c / 10;
        out.categories << '\n';
    }

    out.members << "# doc_id\tcat_id\n";
    if (spec.categories == 0) return;
    for (std::size_t i = 1; i <= pages; ++i) {
        const auto count = 1 + pick(3);
        std::vector<std::size_t> cats{1 + ((i - 1) / 100) % spec.categories};
        while (cats.size() < std::min<std::size_t>(count, spec.categories)) {
            const auto c = 1 + pick(spec.categories);
            if (std::find(cats.begin(), cats.end(), c) == cats.end()) cats.push_back(c);
        }
        for (auto c : cats) out.members << i << '\t' << c << '\n';
    }
}

}  // namespace wikisyn
