// Acceptance gate: runs the full verification grid at release settings and
// prints one line per criterion. Exit status is the number of failures.

#include <cstdio>
#include <string>

#include "ncpb/verify.hpp"

int main() {
    ncpb::VerifyOptions opt;   // release defaults: 32x32, margin 8, seed 12345
    auto results = ncpb::acceptance_criteria(opt);

    int failures = 0;
    for (const auto& r : results) {
        if (!r.pass)
            ++failures;
        std::printf("[%s] criterion %02d  %s\n    %s\n",
                    r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
                    r.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n",
                int(results.size()) - failures, results.size());
    return failures;
}
