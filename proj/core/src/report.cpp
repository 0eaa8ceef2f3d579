#include <qrok/report.hpp>
#include <qrok/version.hpp>

#include <json.hpp>

#include <sstream>

namespace qrok {

using json = nlohmann::json;

const char* verdict_word(TaskVerdict v) {
  switch (v) {
    case TaskVerdict::Pass:
      return "pass";
    case TaskVerdict::CertifiedFailure:
      return "fail";
    case TaskVerdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

TaskVerdict worse(TaskVerdict a, TaskVerdict b) {
  if (a == TaskVerdict::CertifiedFailure || b == TaskVerdict::CertifiedFailure)
    return TaskVerdict::CertifiedFailure;
  if (a == TaskVerdict::Unknown || b == TaskVerdict::Unknown) return TaskVerdict::Unknown;
  return TaskVerdict::Pass;
}

std::string ReportDocument::to_json() const {
  json j;
  j["schema"] = "qrok-report/1";
  j["tool"]["name"] = "qrok";
  j["tool"]["version"] = kToolVersion;
  j["command"] = command;
  j["spec"] = json::parse(canonical_spec_json(spec));
  json tasks_j = json::array();
  for (const TaskOutcome& t : tasks) {
    json tj;
    tj["command"] = t.command;
    tj["verdict"] = verdict_word(t.verdict);
    tj["detail"] = json::parse(t.detail_json);
    if (timing) tj["seconds"] = t.seconds;
    tasks_j.push_back(std::move(tj));
  }
  j["tasks"] = std::move(tasks_j);
  j["verdict"] = verdict_word(verdict);
  j["exit_code"] = exit_code();
  return j.dump(2) + "\n";
}

namespace {

bool scalar_only(const json& a) {
  for (const json& e : a)
    if (e.is_structured()) return false;
  return true;
}

std::string scalar_str(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

void render(const json& j, const std::string& indent, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_structured() && !(it->is_array() && scalar_only(*it))) {
        os << indent << it.key() << ":\n";
        render(*it, indent + "  ", os);
      } else if (it->is_array()) {
        os << indent << it.key() << ": [";
        for (size_t i = 0; i < it->size(); ++i) os << (i ? ", " : "") << scalar_str((*it)[i]);
        os << "]\n";
      } else {
        os << indent << it.key() << ": " << scalar_str(*it) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const json& e : j) {
      os << indent << "-\n";
      render(e, indent + "  ", os);
    }
  } else {
    os << indent << scalar_str(j) << "\n";
  }
}

}  // namespace

std::string ReportDocument::to_text() const {
  json j = json::parse(to_json());
  std::ostringstream os;
  os << "qrok " << j["tool"]["version"].get<std::string>() << " (report schema "
    << j["schema"].get<std::string>() << ")\n";
  os << "command: " << j["command"].get<std::string>() << "\n";
  if (j["spec"].contains("name"))
    os << "spec: " << j["spec"]["name"].get<std::string>() << "\n";
  os << "verdict: " << j["verdict"].get<std::string>() << " (exit "
    << j["exit_code"].get<int>() << ")\n";
  long long i = 0;
  for (const json& t : j["tasks"]) {
    os << "\ntask " << ++i << ": " << t["command"].get<std::string>() << " -> "
      << t["verdict"].get<std::string>() << "\n";
    if (t.contains("seconds")) os << "  seconds: " << t["seconds"].dump() << "\n";
    render(t["detail"], "  ", os);
  }
  return os.str();
}

}  // namespace qrok
