#ifndef GRASSGEO_CLI_HPP
#define GRASSGEO_CLI_HPP

#include <string>
#include <vector>

namespace grassgeo::cli {

/// Exit codes: 0 success, 1 verified property falsified, 2 parse/config
/// error, 3 rank mismatch, 4 numerical failure.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace grassgeo::cli

#endif
