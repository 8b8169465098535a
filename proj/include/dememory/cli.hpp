#ifndef DEMEMORY_CLI_HPP
#define DEMEMORY_CLI_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dememory/policies.hpp"
#include "dememory/workload.hpp"

namespace dememory::cli {

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The classic positional invocation:
//   dememory <algorithm> <num_frames> <show_process> <debug> <indexes> <page_refs> [--seed N]
// Algorithm codes: A = aging (one level), B = aging-n (3 levels, speeds
// 1,2,3); any canonical policy name is accepted in the same position.
struct CompatInvocation {
    Policy policy = Policy::Aging1;
    std::uint64_t num_frames = 0;
    bool show_process = false;
    bool debug = false;
    std::uint64_t indexes = 0;
    std::uint64_t page_refs = 0;
    std::uint64_t seed = kDefaultSeed;
    bool seed_given = false;
};

// Throws UsageError naming the offending field.
CompatInvocation parse_compat(const std::vector<std::string>& args);

// Full dispatcher: compat mode, or the simulate / sweep / gen-trace
// subcommands. `args` excludes the program name. Returns the process exit
// code: 0 on success, 2 on usage errors, 1 on runtime errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string help_text();

}  // namespace dememory::cli

#endif
