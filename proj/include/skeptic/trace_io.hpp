#pragma once

#include "skeptic/engine.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace skeptic {

// Trace documents serialize with sorted keys and dotted Ulam-Harris node
// keys ("ε", "2", "2.1"); parse + re-serialize is byte-identical.
nlohmann::json trace_to_json(const VerificationTrace& trace);
VerificationTrace trace_from_json(const nlohmann::json& j);

std::string trace_to_string(const VerificationTrace& trace);
void write_trace(const VerificationTrace& trace, const std::string& path);
VerificationTrace read_trace(const std::string& path);

}  // namespace skeptic
