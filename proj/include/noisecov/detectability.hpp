#pragma once

#include <vector>

#include "noisecov/system_model.hpp"

namespace noisecov {

enum class Tristate { Yes, No, Indeterminate };

const char* to_string(Tristate t);

/// rank([[C*B, D], [D, 0]]) == rank(D) + rank([B; D]).
bool rank_matching(const SystemMatrices& system, const ToleranceConfig& tol = {});

struct InvariantZero {
    enum class Kind { Stable, Marginal, Unstable };
    Complex value;
    int multiplicity = 1;
    Kind kind = Kind::Stable;
};

struct InvariantZeroResult {
    std::vector<InvariantZero> zeros;  // finite zeros only
    bool degenerate = false;  // normal rank of the pencil below n + rank([B; D]) everywhere
    int normal_rank = 0;
    int rank_target = 0;      // n + rank([B; D])
};

/// Finite z where [[z*I - A, -B], [C, D]] drops below rank n + rank([B; D]).
/// The pencil is column-compressed through the SVD of [B; D], squared up with
/// random constant columns, and solved as a generalized eigenvalue problem;
/// every candidate is then verified by a rank test on the original pencil.
InvariantZeroResult invariant_zeros(const SystemMatrices& system, const ToleranceConfig& tol = {});

struct StrongDetectabilityReport {
    bool rank_matching = false;
    InvariantZeroResult zeros;
    bool minimum_phase = false;            // every finite zero strictly inside the unit circle
    Tristate strongly_detectable = Tristate::No;
};

/// Rank matching plus minimum phase; Indeterminate when the pencil is degenerate.
StrongDetectabilityReport strongly_detectable(const SystemMatrices& system,
                                              const ToleranceConfig& tol = {});

}  // namespace noisecov
