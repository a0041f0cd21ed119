// Command-line front end. run() is the whole program minus process plumbing.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qtoda::cli {

enum Exit { ok = 0, failure = 1, usage = 2 };

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtoda::cli
