#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end.
 *
 * Exit codes: 0 solved (possibly with no solution), 1 usage or input
 * error, 2 node budget exceeded.
 */

#include <ostream>

namespace dds {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dds
