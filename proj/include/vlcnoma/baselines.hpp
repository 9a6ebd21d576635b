#pragma once

#include <string_view>

#include "vlcnoma/system.hpp"

namespace vlcnoma {

enum class Objective { sum, min };

std::string_view to_string(Objective o);
Objective parse_objective(std::string_view s);

/// Result of running one scheme under one objective on one realization.
struct SchemeOutcome {
  SchemeRates rates;
  double objective = 0.0;  // nat/s; 0 when infeasible
  bool feasible = false;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

/// CoMP-assisted OMA. Each cell gives half of B_v to its strong UE and half to
/// the weak UE; the weak half-band is shared by both cells (joint transmission,
/// amplitudes h_1w + h_2w add) and the two strong half-bands are orthogonal, so
/// no inter-cell interference remains. Every band runs at full per-AP power.
/// Under the sum objective the scheme is feasible when every UE reaches R_th.
SchemeOutcome comp_oma_rates(const ChannelState& ch, const SystemParams& sp, Objective obj);

/// Non-coordinated NOMA with identity precoding. The weak UE is served by the
/// AP with the larger gain towards it; the other AP serves only its strong UE.
/// Inter-cell interference enters every SINR denominator as noise with the same
/// shaping factor c as the intra-cell terms. The serving cell's power split is
/// found by a line search over line_search_points values of alpha in [0, 1].
SchemeOutcome noma_rates(const ChannelState& ch, const SystemParams& sp, Objective obj);

/// As noma_rates, but the weak UE's message is relayed only by the strong UE
/// of its serving cell over the D2D link.
SchemeOutcome cnoma_rates(const ChannelState& ch, const SystemParams& sp, const RfState& rf,
                          Objective obj);

/// Weak-UE serving AP (0 or 1) used by the non-coordinated schemes.
int weak_association(const ChannelState& ch);

/// Rates of the non-coordinated schemes at a given power split of the serving
/// cell. `relay_rate` < 0 selects NOMA (direct link); otherwise C-NOMA.
SchemeRates uncoordinated_rates(const ChannelState& ch, const SystemParams& sp, double alpha,
                                double relay_rate);

}  // namespace vlcnoma
