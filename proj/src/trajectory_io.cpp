#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flow.hpp"

namespace elastica {

using nlohmann::json;

namespace {

const char* terminal_name(Terminal t) {
  switch (t) {
    case Terminal::Converged: return "Converged";
    case Terminal::TimeLimit: return "TimeLimit";
    case Terminal::StepFailure: return "StepFailure";
  }
  return "Unknown";
}

Terminal terminal_from_name(const std::string& s) {
  if (s == "Converged") return Terminal::Converged;
  if (s == "TimeLimit") return Terminal::TimeLimit;
  if (s == "StepFailure") return Terminal::StepFailure;
  throw ParseError("unknown terminal status: " + s);
}

json curve_json(const ClosedCurve& c) {
  return json::parse(curve_to_string(c));
}

}  // namespace

std::string trajectory_to_string(const Trajectory& traj) {
  std::ostringstream out;
  size_t snap = 0;
  for (const FlowRecord& r : traj.records) {
    json line = {{"type", "record"}, {"t", r.t},           {"energy", r.energy},
                 {"grad_norm", r.grad_norm}, {"dt", r.dt}, {"cum_length", r.cum_length}};
    out << line.dump() << "\n";
    while (snap < traj.snapshots.size() && traj.snapshots[snap].first <= r.t) {
      json s = {{"type", "snapshot"},
                {"t", traj.snapshots[snap].first},
                {"curve", curve_json(traj.snapshots[snap].second)}};
      out << s.dump() << "\n";
      ++snap;
    }
  }
  json fin = {{"type", "final"},
              {"status", terminal_name(traj.terminal)},
              {"reason", traj.failure_reason},
              {"curve", curve_json(traj.final_curve)}};
  out << fin.dump() << "\n";
  return out.str();
}

Trajectory trajectory_from_string(const std::string& text) {
  Trajectory traj;
  bool saw_final = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed trajectory line: ") + e.what());
    }
    try {
      std::string type = doc.at("type").get<std::string>();
      if (type == "record") {
        FlowRecord r;
        r.t = doc.at("t").get<double>();
        r.energy = doc.at("energy").get<double>();
        r.grad_norm = doc.at("grad_norm").get<double>();
        r.dt = doc.at("dt").get<double>();
        r.cum_length = doc.at("cum_length").get<double>();
        traj.records.push_back(r);
      } else if (type == "snapshot") {
        traj.snapshots.emplace_back(doc.at("t").get<double>(),
                                    curve_from_string(doc.at("curve").dump()));
      } else if (type == "final") {
        traj.terminal = terminal_from_name(doc.at("status").get<std::string>());
        traj.failure_reason = doc.value("reason", std::string());
        traj.final_curve = curve_from_string(doc.at("curve").dump());
        saw_final = true;
      } else {
        throw ParseError("unknown trajectory line type: " + type);
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed trajectory line: ") + e.what());
    }
  }
  if (traj.records.empty()) throw ParseError("trajectory stream holds no records");
  if (!saw_final) throw ParseError("trajectory stream is missing its final line");
  return traj;
}

void save_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << trajectory_to_string(traj);
  if (!out) throw IoError("write failed: " + path);
}

Trajectory load_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return trajectory_from_string(ss.str());
}

}  // namespace elastica
