// Prints one PASS/FAIL line per acceptance criterion. With --criterion N only
// that criterion runs. Exit status is non-zero if any printed line fails.

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <vector>

#include "rindler/validation.hpp"

int main(int argc, char **argv) {
    using namespace rindler::validation;
    std::vector<CriterionResult> results;
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
        const int id = std::atoi(argv[2]);
        if (id < 1 || id > kCriterionCount) {
            std::cerr << "criterion must be 1.." << kCriterionCount << "\n";
            return 2;
        }
        StateLog log;
        results.push_back(run_criterion(id, &log));
    } else if (argc == 1) {
        results = run_all();
    } else {
        std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
        return 2;
    }
    bool all = true;
    for (const auto &r : results) {
        std::cout << format_line(r) << "\n";
        all &= r.pass;
    }
    return all ? 0 : 1;
}
