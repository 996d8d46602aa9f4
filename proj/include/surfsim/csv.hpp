// CSV simulation logs and hand traces.
//
// Logs start with "# surfsim-log v1 dt=<dt>" followed by a column header.
// Doubles are written in shortest round-trip form, so values read back are
// bit-identical to what was simulated.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "surfsim/paddle.hpp"
#include "surfsim/scenario.hpp"

namespace surfsim {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

void write_log_csv(const SimulationLog& log, std::ostream& out);
void write_log_csv(const SimulationLog& log, const std::filesystem::path& path);

/// Mass and inertia are not stored; rows carry default values for them.
/// Throws FormatError on a bad header, column count or number.
SimulationLog read_log_csv(std::istream& in);
SimulationLog read_log_csv(const std::filesystem::path& path);

/// Header `t,lx,ly,lz,rx,ry,rz`; leading lines starting with '#' are skipped.
/// Throws FormatError on malformed rows or non-increasing t.
std::vector<HandSample> read_hand_trace(std::istream& in);
std::vector<HandSample> read_hand_trace(const std::filesystem::path& path);
void write_hand_trace(const std::vector<HandSample>& trace, std::ostream& out);
void write_hand_trace(const std::vector<HandSample>& trace, const std::filesystem::path& path);

}  // namespace surfsim
