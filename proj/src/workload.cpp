#include "dememory/workload.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dememory {

namespace {

double canonical_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ReferenceTrace generate_trace(const WorkloadSpec& spec) {
    if (spec.num_indexes < 1)
        throw std::invalid_argument("num_indexes: must be >= 1");
    if (spec.write_probability < 0.0 || spec.write_probability > 1.0)
        throw std::invalid_argument("write_probability: must be in [0, 1]");

    std::mt19937_64 rng(spec.seed);
    ReferenceTrace trace;
    trace.reserve(spec.num_refs);
    for (std::uint64_t i = 0; i < spec.num_refs; ++i) {
        const PageId page = rng() % spec.num_indexes;
        const bool write = canonical_double(rng) < spec.write_probability;
        trace.push_back({page, write ? AccessKind::Write : AccessKind::Read, i});
    }
    return trace;
}

ReferenceTrace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path.string());

    ReferenceTrace trace;
    std::string line;
    std::uint64_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream fields(line);
        std::string kind;
        if (!(fields >> kind) || kind[0] == '#') continue;

        const auto fail = [&](const std::string& what) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_number) +
                                     ": " + what);
        };
        if (kind != "R" && kind != "W") fail("invalid access kind '" + kind + "'");
        std::uint64_t page = 0;
        if (!(fields >> page)) fail("missing or invalid page id");
        std::string extra;
        if (fields >> extra) fail("trailing content '" + extra + "'");

        trace.push_back({page, kind == "W" ? AccessKind::Write : AccessKind::Read,
                         static_cast<std::uint64_t>(trace.size())});
    }
    return trace;
}

void write_trace(const ReferenceTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open trace file for writing: " + path.string());
    for (const Access& access : trace) {
        out << (access.kind == AccessKind::Write ? 'W' : 'R') << ' ' << access.page << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace dememory
