#pragma once

#include <iosfwd>

namespace dynsamp::cli {

/// Entry point shared by the executable and the tests. Exit status: 0 success
/// or positive verdict, 2 well-formed negative verdict, 1 error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dynsamp::cli
