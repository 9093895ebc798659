#include "popstack/pair_io.hpp"

#include <fstream>
#include <sstream>

namespace popstack {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

AvoidancePair parse_pair(std::string_view text) {
    enum class Section { None, Forbidden, Saving };
    Section section = Section::None;
    bool seen_f = false;
    bool seen_g = false;
    std::vector<Permutation> f;
    std::vector<Permutation> g;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto where = "line " + std::to_string(line_no) + ": ";
        if (line == "[F]" || line == "[G]") {
            const bool is_f = line == "[F]";
            if ((is_f && seen_f) || (!is_f && seen_g)) {
                throw InvalidInput(where + "duplicate section " + std::string(line));
            }
            (is_f ? seen_f : seen_g) = true;
            section = is_f ? Section::Forbidden : Section::Saving;
            continue;
        }
        if (section == Section::None) {
            throw InvalidInput(where + "permutation outside of a [F] or [G] section");
        }
        try {
            Permutation p = Permutation::parse(line);
            if (!p.is_reduced()) throw InvalidInput(p.to_string() + " is not in reduced form");
            (section == Section::Forbidden ? f : g).push_back(std::move(p));
        } catch (const InvalidInput& e) {
            throw InvalidInput(where + e.what());
        }
    }
    if (!seen_f && !seen_g) throw InvalidInput("pair file has neither a [F] nor a [G] section");
    return AvoidancePair(std::move(f), std::move(g));
}

AvoidancePair read_pair_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_pair(buffer.str());
    } catch (const InvalidInput& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

std::string format_pair(const AvoidancePair& pair, const std::vector<std::string>& comments) {
    std::ostringstream out;
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "[F]\n";
    for (const auto& p : pair.forbidden) out << p.to_string() << '\n';
    out << "[G]\n";
    for (const auto& p : pair.saving) out << p.to_string() << '\n';
    return out.str();
}

void write_pair_file(const std::filesystem::path& path, const AvoidancePair& pair,
                     const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << format_pair(pair, comments);
    if (!out) throw InvalidInput("write failed for " + path.string());
}

}  // namespace popstack
