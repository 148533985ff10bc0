#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ncpb/model.hpp"

namespace ncpb {

// Everything a run needs. Tolerance overrides are keyed by check name
// ("tol.<checkname>" in the file) and must be >= 1e-14.
struct RunConfig {
    ModelParams params;
    TruncationSpec trunc{32, 32, 8};
    int n_max = 6;
    std::uint64_t seed = 12345;
    std::map<std::string, double> tol_overrides;

    double tol_for(const std::string& name, double fallback) const;
};

// "key = value" lines, '#' comments, UTF-8. Keys: m, omega, hbar, theta,
// alpha1..alpha4 (complex literal "a", "a+bi", "a-bi", "bi"), dim1, dim2,
// margin, n_max, seed, tol.<checkname>. Unknown keys, malformed values, and
// violated invariants raise ConfigError carrying the 1-based line number.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

// Complex literal parser used for the alpha values.
cplx parse_complex(const std::string& s);

} // namespace ncpb
