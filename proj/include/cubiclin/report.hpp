#pragma once

// Full analysis of one matrix: rank data, exact bases, the nilpotency and
// class-Z verdicts, and the non-properness pipeline when it applies.

#include <cstdint>

#include "cubiclin/json_io.hpp"

namespace cubiclin {

struct AnalyzeOptions {
    std::uint64_t seed = 1;
    int trials = 50;       // nilpotency sample points and probe starts per lambda
    double tol = 1e-9;
    bool timings = true;
};

Json analyze_matrix(const Mat& a, const AnalyzeOptions& opts);

}  // namespace cubiclin
