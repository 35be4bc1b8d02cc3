#pragma once

namespace pa {

// Numerical thresholds shared by every module. rank is relative to the
// magnitude of the vector being tested.
struct Tolerances {
    double zero = 1e-12;
    double sum = 1e-9;
    double rank = 1e-9;
    double lp = 1e-9;
    double nonneg = 1e-12;
};

}  // namespace pa
