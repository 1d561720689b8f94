#pragma once

#include <iosfwd>
#include <string>
#include <vector>


namespace catlift {

/** `catlift validate|query|check|migrate|triples|pattern ...`; `args` excludes the program name.
 * Exit status: 0 success, 1 violated (or no results with `--expect-some`), 2 parse or typing error, 3 unbounded. */
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}
