#ifndef PUBENCH_CLI_HPP
#define PUBENCH_CLI_HPP

namespace pubench {

/// Entry point of the benchmark tool. Exit codes: 0 success, 2 validation
/// error (unknown function/suite, bad arguments), 3 construction hit a
/// safety limit, 1 unexpected failure.
int cli_main(int argc, const char* const* argv);

}  // namespace pubench

#endif  // PUBENCH_CLI_HPP
