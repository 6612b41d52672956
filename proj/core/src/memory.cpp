#include "deacp/memory.hpp"

#include "deacp/error.hpp"

#include <sstream>

namespace deacp {

namespace {
const BitString kEmpty;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}
} // namespace

const BitString &MemState::operator[](const Natural &i) const {
    auto it = regs_.find(i);
    return it == regs_.end() ? kEmpty : it->second;
}

MemState MemState::override(const Natural &i, BitString w) const {
    MemState out = *this;
    if (w.empty())
        out.regs_.erase(i);
    else
        out.regs_[i] = std::move(w);
    return out;
}

std::string MemState::to_string() const {
    std::string s = "[";
    bool first = true;
    for (const auto &[i, w] : regs_) {
        if (!first)
            s += ", ";
        first = false;
        s += i.str() + "=" + w.to_string();
    }
    return s + "]";
}

MemState MemState::parse_file(std::string_view text) {
    MemState m;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'index=bitstring'", line_no);
        const auto idx = trim(line.substr(0, eq));
        const auto val = trim(line.substr(eq + 1));
        if (idx.empty() || idx.find_first_not_of("0123456789") != std::string_view::npos)
            throw ParseError("bad register index '" + std::string(idx) + "'", line_no);
        try {
            m = m.override(Natural(std::string(idx)), BitString::parse(val));
        } catch (const ParseError &e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return m;
}

std::size_t MemState::hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const auto &[i, w] : regs_) {
        h ^= hash_value(i) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::hash<BitString>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

MemState override(const MemState &sigma, const Natural &i, BitString w) {
    return sigma.override(i, std::move(w));
}

MemState merge_n(std::span<const MemState> memories) {
    if (memories.empty())
        throw Error("need at least one memory");
    const Natural n = memories.size();
    MemState out;
    for (std::size_t k = 1; k <= memories.size(); ++k)
        for (const auto &[i, w] : memories[k - 1].registers())
            out = out.override(n * i + (k - 1), w);
    return out;
}

std::vector<MemState> split_n(const MemState &sigma, std::size_t n) {
    if (n == 0)
        throw Error("need at least one memory");
    std::vector<MemState> out(n);
    const Natural nn = n;
    for (const auto &[r, w] : sigma.registers()) {
        const Natural i = r / nn;
        const auto k = static_cast<std::size_t>(r % nn);
        out[k] = out[k].override(i, w);
    }
    return out;
}

} // namespace deacp
