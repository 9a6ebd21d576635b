#pragma once

#include "vlcnoma/allocator.hpp"
#include "vlcnoma/baselines.hpp"

namespace vlcnoma {

/// Runs one scheme under one objective. The CoMP-NOMA and CoMP-C-NOMA
/// schemes map to P1/P3 and P2/P4 respectively and throw
/// DegenerateChannelError when ZF precoding is impossible.
SchemeOutcome run_scheme(Scheme s, Objective obj, const ChannelState& ch, const SystemParams& sp,
                         const RfState& rf);

/// CoMP variant on a pre-built link budget.
SchemeOutcome run_comp_scheme(Scheme s, Objective obj, const LinkBudget& b, double r_th,
                              std::size_t k);

}  // namespace vlcnoma
