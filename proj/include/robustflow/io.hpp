// Extended DIMACS max-flow format and a JSON mirror of FlowNetwork.
//
// DIMACS lines:
//   c <comment>
//   p max <nodes> <arcs>
//   n <id> s          (1-based node ids on disk)
//   n <id> t
//   a <tail> <head> <capacity> [<safe>]
// <safe> is 0 (default, interdictable) or 1. Arc order in the file defines
// the arc indices. The writer is canonical, so write/read round-trips are
// byte-identical.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "robustflow/graph.hpp"

namespace robustflow {

enum class FileFormat { kDimacs, kJson };

FlowNetwork read_dimacs(std::istream& in);
void write_dimacs(const FlowNetwork& net, std::ostream& out);

FlowNetwork read_json(std::istream& in);
void write_json(const FlowNetwork& net, std::ostream& out);

// Reads/writes by explicit format; format_from_name maps "dimacs"/"json".
FileFormat format_from_name(const std::string& name);
FlowNetwork read_network_file(const std::string& path, FileFormat format);
void write_network_file(const FlowNetwork& net, const std::string& path,
                        FileFormat format);

// Observation files: one scenario per line as space-separated arc indices
// ('#' starts a comment). A JSON array of arrays is accepted as well; the
// reader sniffs a leading '[' to pick the format.
std::vector<Scenario> read_observations(std::istream& in);
std::vector<Scenario> read_observations_file(const std::string& path);
void write_observations(const std::vector<Scenario>& observations,
                        std::ostream& out);

// Shortest decimal representation that round-trips exactly.
std::string format_double(double value);

}  // namespace robustflow
