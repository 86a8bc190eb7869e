#include <cstdlib>
#include <string>
#include <vector>

#include "kerr/acceptance.hpp"

// Runs every acceptance criterion, one pass/fail line each. Criterion numbers
// may be passed as arguments to run a subset.
int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    return kerr::run_acceptance(ids, 0);
}
