#pragma once

#include <cstdint>

namespace trps {

/// Deterministic work tally recorded alongside wall time. Propagation
/// steps count one RK4 step of one trajectory; quadrature evaluations
/// count one integrand sample of the double time integral.
struct WorkCounters {
    std::uint64_t propagation_steps = 0;
    std::uint64_t quadrature_evals = 0;

    WorkCounters& operator+=(const WorkCounters& o) {
        propagation_steps += o.propagation_steps;
        quadrature_evals += o.quadrature_evals;
        return *this;
    }
};

}  // namespace trps
