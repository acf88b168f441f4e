#pragma once

#include <string>

#include "propertime/fock.hpp"
#include "propertime/protocols.hpp"

// Test-fixture and result serialization.
//
// Binary layout (little-endian hosts):
//   bytes 0..5   magic "PTFK1\n"
//   u64          JSON header length L
//   L bytes      UTF-8 JSON: {"type": "state"|"operator"|"density",
//                             "dim": N, "kind": "..." (operators only)}
//   payload      complex doubles as (re, im) pairs, column-major for
//                matrices; N entries for states, N·N for matrices
//
// Loaded objects pass through the normal validating constructors, so a
// corrupted payload surfaces as the same error a bad in-memory value would.
//
// CSV/JSON emitters are pure string builders (callers write the file), use
// '\n' line ends and %.17g doubles, and are deterministic: byte-identical
// output for identical inputs.

namespace propertime::io {

void save_state(const std::string& path, const fock::MotionalState& state);
fock::MotionalState load_state(const std::string& path);

void save_operator(const std::string& path, const fock::Operator& op);
fock::Operator load_operator(const std::string& path);

void save_density(const std::string& path, const fock::MotionalDensity& rho);
fock::MotionalDensity load_density(const std::string& path);

// Header: omega_t,re_rho_eg,im_rho_eg,visibility,phase_unwrapped,success_prob
std::string protocol_csv(const protocols::ProtocolResult& result);

// Fitted shift, time-averaged phase, witness extrema, mean success.
std::string protocol_summary_json(const protocols::ProtocolResult& result);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace propertime::io
