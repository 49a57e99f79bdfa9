#pragma once

#include <stdexcept>
#include <string>

#include "psg/scenario.hpp"

namespace psg {

/// Parse or schema failure while reading a scenario file. The message names
/// the offending key path (or the parser's line/byte position).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a PDoS scenario from its JSON document form. Top-level keys:
/// lambda, prior.sender.d, prior.receiver.{k,o,v},
/// detector.{k,o,v}.b_given_{l,d}_p, utility.receiver.{k,o,v}.{l,d}.p.{t,g,f}
/// (f omitted or the string "prohibited" for k and o), omega.d.{t,g,f},
/// omega.l.{t,g,f} (optional, defaults to 0), tau_low, tau_high,
/// dictionary, offpath_belief_d (optional, default 1). Unknown keys are
/// rejected. Structural validation is the caller's job (validate_pdos_scenario).
PdosScenario parse_pdos_scenario(const std::string& json_text);
PdosScenario load_pdos_scenario(const std::string& path);

/// Serializes back to the document form. Numbers render with the shortest
/// representation that parses back to the identical double.
std::string to_json(const PdosScenario& ps);
void save_pdos_scenario(const PdosScenario& ps, const std::string& path);

}  // namespace psg
