#ifndef DEMEMORY_WORKLOAD_HPP
#define DEMEMORY_WORKLOAD_HPP

#include <filesystem>

#include "dememory/core.hpp"

namespace dememory {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct WorkloadSpec {
    std::uint64_t num_indexes = 1;  // unique page indexes, pages drawn from [0, num_indexes)
    std::uint64_t num_refs = 0;
    std::uint64_t seed = kDefaultSeed;
    double write_probability = 0.0;
};

// Uniform random trace. Pages come from mt19937_64 outputs reduced modulo
// num_indexes; the write draw uses the 53-bit canonical double. Both steps are
// fully specified, so the same spec yields the same trace on any platform.
ReferenceTrace generate_trace(const WorkloadSpec& spec);

// Text format, one access per line: "R <id>" or "W <id>". Lines starting
// with '#' and blank lines are skipped on read. LF line endings.
ReferenceTrace read_trace(const std::filesystem::path& path);
void write_trace(const ReferenceTrace& trace, const std::filesystem::path& path);

}  // namespace dememory

#endif
