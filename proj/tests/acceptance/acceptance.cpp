// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria, exit 1 if any fails
//   acceptance --criterion N   run criterion N only

#include <cstdlib>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include "hsum/checks.hpp"

#ifndef HSUM_CLI_PATH
#error "HSUM_CLI_PATH must name the hsum executable"
#endif

namespace {

constexpr unsigned kLast = hsum::kCriterionCount + 1;

// The command-line reproduction must exit 0 on its own.
hsum::CheckResult reproduce_exit_status()
{
    const std::string cmd = std::string("\"") + HSUM_CLI_PATH + "\" reproduce > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    const int status = raw != -1 && WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return {std::to_string(kLast), "`hsum reproduce` exits 0", status == 0,
            "exit status " + std::to_string(status)};
}

hsum::CheckResult run(unsigned id)
{
    return id == kLast ? reproduce_exit_status() : hsum::run_criterion(id);
}

} // namespace

int main(int argc, char** argv)
{
    unsigned first = 1, last = kLast;
    if (argc == 3 && std::string(argv[1]) == "--criterion") {
        first = last = static_cast<unsigned>(std::strtoul(argv[2], nullptr, 10));
        if (first < 1 || first > kLast) {
            std::cerr << "criterion must be 1.." << kLast << "\n";
            return 2;
        }
    } else if (argc != 1) {
        std::cerr << "usage: acceptance [--criterion N]\n";
        return 2;
    }

    bool all = true;
    for (unsigned id = first; id <= last; ++id) {
        const auto r = run(id);
        all = all && r.passed;
        std::cout << "criterion " << (id < 10 ? " " : "") << id << ": " << (r.passed ? "PASS" : "FAIL") << "  "
                  << r.title << " | " << r.detail << std::endl;
    }
    return all ? 0 : 1;
}
