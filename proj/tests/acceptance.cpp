// One line per acceptance criterion; exits non-zero if any fails.

#include <iostream>

#include "schreier/sweeps.hpp"

int main() {
    using namespace schreier;
    const SweepOptions options;
    int failed = 0;
    for (const auto& c : criteria()) {
        CheckResult r;
        try {
            r = run_timed(std::to_string(c.number), [&] { return c.run(options); });
        } catch (const GuardExceeded& e) {
            r.id = std::to_string(c.number);
            r.violation(Json{{"guard", e.what()}});
        }
        if (!r.passed) ++failed;
        std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " ("
                  << r.cases << " cases, " << r.violations << " violations, " << r.elapsed.count() << " ms)\n";
        if (!r.passed)
            for (const auto& w : r.witnesses) std::cout << "    witness: " << w.dump() << "\n";
        std::cout.flush();
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
    return failed == 0 ? 0 : 1;
}
