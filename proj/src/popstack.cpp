#include "popstack/popstack.hpp"

#include <algorithm>
#include <sstream>

namespace popstack {

namespace {

std::string block_text(const std::vector<Entry>& block, bool compact) {
    std::ostringstream out;
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (!compact && i != 0) out << ' ';
        out << block[i];
    }
    return out.str();
}

bool single_digits(std::span<const Entry> entries) {
    return std::all_of(entries.begin(), entries.end(), [](Entry e) { return e >= 0 && e <= 9; });
}

}  // namespace

std::string BlockDecomposition::to_string() const {
    bool compact = true;
    for (const auto& b : blocks) compact = compact && single_digits(b);
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i != 0) out += '|';
        out += block_text(blocks[i], compact);
    }
    return out;
}

BlockDecomposition block_decompose(const Permutation& p) {
    BlockDecomposition d;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i == 0 || p[i - 1] < p[i]) d.blocks.emplace_back();
        d.blocks.back().push_back(p[i]);
    }
    return d;
}

Permutation pop_pass(const Permutation& p) {
    std::vector<Entry> out(p.begin(), p.end());
    auto start = out.begin();
    for (auto it = out.begin(); it != out.end(); ++it) {
        if (std::next(it) == out.end() || *it < *std::next(it)) {
            std::reverse(start, std::next(it));
            start = std::next(it);
        }
    }
    return Permutation(std::move(out));
}

Permutation pop_pass_k(const Permutation& p, std::size_t k) {
    Permutation current = p;
    for (std::size_t i = 0; i < k && !current.is_sorted(); ++i) current = pop_pass(current);
    return current;
}

bool is_k_sortable(const Permutation& p, std::size_t k) {
    return pop_pass_k(p, k).is_sorted();
}

std::size_t min_passes(const Permutation& p) {
    std::size_t passes = 0;
    Permutation current = p;
    while (!current.is_sorted()) {
        current = pop_pass(current);
        ++passes;
    }
    return passes;
}

std::optional<std::pair<std::size_t, std::size_t>> far_apart_witness(const Permutation& p,
                                                                      std::size_t k) {
    const auto d = block_decompose(p);
    const std::size_t m = d.size();

    // 3^k with an early exit once it exceeds the block count
    std::size_t min_span = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (min_span > m / 3) return std::nullopt;
        min_span *= 3;
    }
    if (min_span > m) return std::nullopt;

    std::vector<std::size_t> first_pos(m);
    for (std::size_t b = 0, pos = 0; b < m; pos += d.blocks[b].size(), ++b) first_pos[b] = pos;

    // The largest entry of a block is its first, the smallest its last.
    for (std::size_t span = min_span; span <= m; ++span) {
        for (std::size_t j = 0; j + span <= m; ++j) {
            const std::size_t last_block = j + span - 1;
            const Entry a = d.blocks[j].front();
            const Entry b = d.blocks[last_block].back();
            if (a > b) {
                return std::pair{first_pos[j], first_pos[last_block] + d.blocks[last_block].size() - 1};
            }
        }
    }
    return std::nullopt;
}

const Permutation& SortTrace::final_permutation(const Permutation& start) const {
    return passes.empty() ? start : passes.back().output;
}

SortTrace sort_trace(const Permutation& p, std::optional<std::size_t> max_passes) {
    SortTrace trace;
    Permutation current = p;
    while (!current.is_sorted() && (!max_passes || trace.passes.size() < *max_passes)) {
        Permutation next = pop_pass(current);
        trace.passes.push_back(PassRecord{current, block_decompose(current), next});
        current = std::move(next);
    }
    return trace;
}

std::string render_trace(const SortTrace& trace) {
    std::ostringstream out;
    for (const auto& pass : trace.passes) {
        out << pass.input.to_compact_string() << " | " << pass.blocks.to_string() << " | "
            << pass.output.to_compact_string() << '\n';
    }
    return out.str();
}

}  // namespace popstack
