#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncpb/config.hpp"
#include "ncpb/model.hpp"
#include "ncpb/states.hpp"

namespace ncpb {

struct ParamSet {
    std::string name;
    ModelParams params;
};

// The default verification grid: one set per qualitative regime (free
// oscillator, noncommutativity only, bosonic-reducible couplings, generic
// real couplings, the complex reduction map).
std::vector<ParamSet> default_grid();

struct VerifyOptions {
    TruncationSpec trunc{32, 32, 8};
    int n_max = 6;
    std::uint64_t seed = 12345;
    std::map<std::string, double> tol;   // per-check overrides

    double tol_for(const std::string& name, double fallback) const;
    static VerifyOptions from_config(const RunConfig& cfg);
};

// Every check for one parameter set. When the derived shifts fall outside
// the validated accuracy envelope, all rows come back as
// "skipped: outside accuracy envelope" (pass=true): the tolerances are not
// honest there. The hooks argument feeds the mutation test.
VerificationReport verify_set(const ParamSet& set, const VerifyOptions& opt,
                              const DeriveHooks& hooks = {});

// verify_set over the default grid plus the broken-symmetry defect check.
VerificationReport verify_grid(const VerifyOptions& opt);

struct CriterionResult {
    int id;
    std::string title;
    bool pass;
    std::string detail;   // binding check, residual, tolerance, set
};

// The twelve acceptance gates, evaluated from a grid report.
std::vector<CriterionResult> acceptance_criteria(const VerifyOptions& opt);

} // namespace ncpb
