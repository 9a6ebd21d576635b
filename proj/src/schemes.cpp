#include "vlcnoma/schemes.hpp"

#include "vlcnoma/error.hpp"

namespace vlcnoma {

SchemeOutcome run_comp_scheme(Scheme s, Objective obj, const LinkBudget& b, double r_th,
                              std::size_t k) {
  const bool cnoma = s == Scheme::comp_cnoma;
  if (!cnoma && s != Scheme::comp_noma) throw DomainError("run_comp_scheme: not a CoMP NOMA scheme");
  PowerAllocation pa;
  if (obj == Objective::sum) {
    const Instance inst{b, r_th};
    pa = cnoma ? solve_p2(inst) : solve_p1(inst, k);
  } else {
    pa = cnoma ? solve_p4(b).allocation : solve_p3(b, k);
  }
  SchemeOutcome out;
  out.alpha1 = pa.alpha1;
  out.alpha2 = pa.alpha2;
  out.feasible = pa.feasible;
  out.rates = cnoma ? comp_cnoma_rates(pa.alpha1, pa.alpha2, b)
                    : comp_noma_rates(pa.alpha1, pa.alpha2, b);
  out.objective = pa.feasible ? pa.objective : 0.0;
  return out;
}

SchemeOutcome run_scheme(Scheme s, Objective obj, const ChannelState& ch, const SystemParams& sp,
                         const RfState& rf) {
  switch (s) {
    case Scheme::comp_oma: return comp_oma_rates(ch, sp, obj);
    case Scheme::noma: return noma_rates(ch, sp, obj);
    case Scheme::cnoma: return cnoma_rates(ch, sp, rf, obj);
    case Scheme::comp_noma:
    case Scheme::comp_cnoma:
      return run_comp_scheme(s, obj, make_link_budget(ch, sp, rf), sp.r_th,
                             sp.line_search_points);
  }
  throw DomainError("run_scheme: unknown scheme");
}

}  // namespace vlcnoma
