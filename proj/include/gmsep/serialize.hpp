#pragma once

#include "gmsep/decision.hpp"
#include "gmsep/swapping.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace gmsep {

/// Formats with 12 significant digits (%.12g), the fixed precision of all
/// numeric program output.
std::string format_sig(double value);

/// Rounds to the double nearest the 12-significant-digit decimal, so JSON
/// dumps are byte-stable.
double round_sig(double value);

nlohmann::json spec_to_json(const ChannelSpec& spec);
ChannelSpec spec_from_json(const nlohmann::json& j);

/// Inline channel mini-grammar: comma-separated `op:param` entries, e.g.
/// "loss:0.3,noise:0.2" or "b1:0.4:x". Ops: loss, amp, noise, b1 (second
/// parameter x|p), rotate, squeeze. An empty string is the identity.
ChannelSpec parse_inline_spec(const std::string& text);

nlohmann::json decision_report_to_json(const DecisionReport& report);
nlohmann::json swap_result_to_json(const SwapParams& params,
                                   const SwapResult& result);
nlohmann::json scan_rows_to_json(const std::vector<ScanRow>& rows);
nlohmann::json dual_povm_result_to_json(const DualPovmResult& result);

}  // namespace gmsep
