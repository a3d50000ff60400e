// One line per acceptance criterion; exit status 1 if any fails.

#include <iostream>

#include "hypervis/harness/acceptance.hpp"

int main() {
    using namespace hypervis::harness;
    bool all = true;
    int passed = 0;
    const auto criteria = acceptance_criteria();
    for (const auto& c : criteria) {
        const auto r = run_criterion(c, kAcceptanceSeed);
        all = all && r.pass;
        passed += r.pass ? 1 : 0;
        std::cout << format_line(r) << std::endl;
    }
    std::cout << passed << "/" << criteria.size() << " criteria passed\n";
    return all ? 0 : 1;
}
