#include "robustflow/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace robustflow {

std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

FlowNetwork read_dimacs(std::istream& in) {
  FlowNetwork net;
  bool have_problem = false, have_source = false, have_sink = false;
  std::int64_t declared_arcs = 0;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw InputError("dimacs line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string tag;
    if (!(tokens >> tag)) continue;  // blank line
    if (tag == "c") continue;
    if (tag == "p") {
      std::string problem;
      std::int64_t nodes = 0;
      if (!(tokens >> problem >> nodes >> declared_arcs) || problem != "max")
        fail("expected 'p max <nodes> <arcs>'");
      if (nodes <= 0 || declared_arcs < 0) fail("bad problem dimensions");
      net.node_count = static_cast<int>(nodes);
      have_problem = true;
      continue;
    }
    if (!have_problem) fail("line before the problem line");
    if (tag == "n") {
      std::int64_t id = 0;
      std::string which;
      if (!(tokens >> id >> which)) fail("expected 'n <id> s|t'");
      if (id < 1 || id > net.node_count) fail("node id out of range");
      if (which == "s") {
        if (have_source) fail("duplicate source line");
        net.source = static_cast<int>(id - 1);
        have_source = true;
      } else if (which == "t") {
        if (have_sink) fail("duplicate sink line");
        net.sink = static_cast<int>(id - 1);
        have_sink = true;
      } else {
        fail("node designator must be 's' or 't'");
      }
      continue;
    }
    if (tag == "a") {
      std::int64_t tail = 0, head = 0;
      double capacity = 0.0;
      if (!(tokens >> tail >> head >> capacity))
        fail("expected 'a <tail> <head> <capacity> [<safe>]'");
      int safe = 0;
      if (tokens >> safe) {
        if (safe != 0 && safe != 1) fail("safe flag must be 0 or 1");
      }
      if (tail < 1 || tail > net.node_count || head < 1 ||
          head > net.node_count)
        fail("arc endpoint out of range");
      net.add_arc(static_cast<int>(tail - 1), static_cast<int>(head - 1),
                  capacity, safe == 1);
      continue;
    }
    fail("unknown line tag '" + tag + "'");
  }
  if (!have_problem) throw InputError("dimacs: missing problem line");
  if (!have_source || !have_sink)
    throw InputError("dimacs: missing source or sink line");
  if (net.num_arcs() != declared_arcs)
    throw InputError("dimacs: arc count differs from the problem line");
  net.validate();
  return net;
}

void write_dimacs(const FlowNetwork& net, std::ostream& out) {
  net.validate();
  out << "p max " << net.node_count << ' ' << net.num_arcs() << '\n';
  out << "n " << net.source + 1 << " s\n";
  out << "n " << net.sink + 1 << " t\n";
  for (const Arc& a : net.arcs) {
    out << "a " << a.tail + 1 << ' ' << a.head + 1 << ' '
        << format_double(a.capacity) << ' ' << (a.safe ? 1 : 0) << '\n';
  }
}

FlowNetwork read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("json: ") + e.what());
  }
  FlowNetwork net;
  try {
    net.node_count = j.at("node_count").get<int>();
    net.source = j.at("source").get<int>();
    net.sink = j.at("sink").get<int>();
    for (const auto& arc : j.at("arcs")) {
      net.add_arc(arc.at("tail").get<int>(), arc.at("head").get<int>(),
                  arc.at("capacity").get<double>(),
                  arc.value("safe", false));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("json: ") + e.what());
  }
  net.validate();
  return net;
}

void write_json(const FlowNetwork& net, std::ostream& out) {
  net.validate();
  nlohmann::json arcs = nlohmann::json::array();
  for (const Arc& a : net.arcs) {
    arcs.push_back({{"tail", a.tail},
                    {"head", a.head},
                    {"capacity", a.capacity},
                    {"safe", a.safe}});
  }
  const nlohmann::json j = {{"node_count", net.node_count},
                            {"source", net.source},
                            {"sink", net.sink},
                            {"arcs", arcs}};
  out << j.dump(2) << '\n';
}

FileFormat format_from_name(const std::string& name) {
  if (name == "dimacs") return FileFormat::kDimacs;
  if (name == "json") return FileFormat::kJson;
  throw InputError("unknown format '" + name + "' (expected dimacs or json)");
}

FlowNetwork read_network_file(const std::string& path, FileFormat format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return format == FileFormat::kDimacs ? read_dimacs(in) : read_json(in);
}

void write_network_file(const FlowNetwork& net, const std::string& path,
                        FileFormat format) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  if (format == FileFormat::kDimacs)
    write_dimacs(net, out);
  else
    write_json(net, out);
}

std::vector<Scenario> read_observations(std::istream& in) {
  // Sniff the first non-whitespace character for the JSON variant.
  char first = 0;
  while (in.get(first) && (first == ' ' || first == '\n' || first == '\t' ||
                           first == '\r')) {
  }
  if (!in) return {};
  in.unget();
  std::vector<Scenario> observations;
  if (first == '[') {
    nlohmann::json j;
    try {
      in >> j;
      for (const auto& row : j)
        observations.push_back(make_scenario(row.get<std::vector<int>>()));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("observations json: ") + e.what());
    }
    return observations;
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::vector<int> ids;
    int id = 0;
    while (tokens >> id) ids.push_back(id);
    if (!tokens.eof())
      throw InputError("observations line " + std::to_string(line_no) +
                       ": expected arc indices");
    if (!ids.empty()) observations.push_back(make_scenario(std::move(ids)));
  }
  return observations;
}

std::vector<Scenario> read_observations_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_observations(in);
}

void write_observations(const std::vector<Scenario>& observations,
                        std::ostream& out) {
  for (const Scenario& eta : observations) {
    for (size_t i = 0; i < eta.arc_ids.size(); ++i)
      out << (i ? " " : "") << eta.arc_ids[i];
    out << '\n';
  }
}

}  // namespace robustflow
