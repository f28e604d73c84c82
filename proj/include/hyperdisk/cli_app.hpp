#pragma once

namespace hyperdisk {

// Command-line front end. Exit codes: 0 success (including experiment runs
// that record a failure flag), 1 usage error, 2 IO/parse/computation error,
// 3 self-test failure.
int run_cli(int argc, char** argv);

}  // namespace hyperdisk
