#pragma once

#include <ostream>

namespace allog {

// Exit codes: 0 success, 1 diagnostics or usage errors, 2 resource caps.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace allog
