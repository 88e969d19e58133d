#pragma once

#include <string>

#include "xorcnf/structure.hpp"
#include "xorcnf/translate.hpp"

namespace xorcnf {

struct AutoTranslation {
  TranslationResult result;
  /// Human-readable statement of the completeness guarantee the chosen
  /// route carries, re-checkable with the measure operations at desk scale.
  std::string guarantee;
  bool warning = false;
};

/// Route selection: acyclic systems go through the chain translation
/// (propagation-complete output); two constraints with a large enough
/// shared part go through the factored pair translation (also
/// propagation-complete); anything else small enough goes through the
/// subset-sum closure (unit propagation recovers all forced assignments on
/// the input variables); beyond the closure cap the chain translation is
/// used with an explicit warning that no completeness guarantee applies.
inline AutoTranslation translate_auto(const XorSystem& S, int closure_cap = 24) {
  AutoTranslation out;
  if (is_acyclic(S)) {
    out.result = x1(S);
    out.guarantee = "propagation-complete (acyclic system)";
    return out;
  }
  if (S.size() == 2) {
    const auto& rows = S.constraints();
    if (x2_applicable(rows[0], rows[1])) {
      out.result = x2(rows[0], rows[1]);
      out.guarantee = "propagation-complete (factored pair)";
      return out;
    }
  }
  if (S.size() <= static_cast<size_t>(closure_cap)) {
    out.result = xstar(S, closure_cap);
    out.guarantee =
        "unit propagation restores all forced assignments over the input "
        "variables (subset-sum closure)";
    return out;
  }
  out.result = x1(S);
  out.guarantee = "none (system too large for the closure route)";
  out.warning = true;
  return out;
}

}  // namespace xorcnf
