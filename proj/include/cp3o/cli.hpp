#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cp3o {

// Exit codes: 0 success, 1 unreadable or malformed input, 2 infeasible
// configuration or mismatched inputs. verify returns 1 when any case fails.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Worker count for bench: CP3O_THREADS if set and positive, otherwise the
// hardware concurrency.
unsigned worker_threads();

} // namespace cp3o
