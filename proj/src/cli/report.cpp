#include <iomanip>
#include <sstream>

#include "btp/cli.hpp"

namespace btp::cli {

using nlohmann::json;

std::optional<bool> SpaceResult::verdict(const std::string& name) const {
  for (const Verdict& v : verdicts)
    if (v.name == name) return v.value;
  return std::nullopt;
}

bool RunReport::passed() const {
  for (const SpaceResult& s : spaces)
    if (!s.passed()) return false;
  return true;
}

json to_json(const RunReport& report, bool with_timing) {
  json j;
  j["command"] = report.command;
  j["subject"] = report.subject;
  json spaces = json::array();
  for (const SpaceResult& s : report.spaces) {
    json e;
    e["name"] = s.name;
    e["type"] = s.type;
    // An array keeps the evaluation order, which the text form also follows.
    json verdicts = json::array();
    for (const Verdict& v : s.verdicts) verdicts.push_back({{"name", v.name}, {"value", v.value}});
    e["verdicts"] = verdicts;
    e["values"] = s.values;
    e["witnesses"] = s.witnesses;
    if (!s.solver.is_null()) e["solver"] = s.solver;
    e["failures"] = s.failures;
    e["warnings"] = s.warnings;
    e["passed"] = s.passed();
    if (with_timing) e["seconds"] = s.seconds;
    spaces.push_back(e);
  }
  j["spaces"] = spaces;
  j["passed"] = report.passed();
  j["exit_code"] = report.exit_code();
  return j;
}

std::string to_text(const RunReport& report, bool with_timing) {
  std::ostringstream os;
  os << report.command;
  if (!report.subject.empty()) os << " " << report.subject;
  os << "\n";
  for (const SpaceResult& s : report.spaces) {
    os << "space: " << s.name << " [" << s.type << "]\n";
    for (const Verdict& v : s.verdicts) os << "  verdict " << v.name << ": " << (v.value ? "true" : "false") << "\n";
    for (const auto& [key, value] : s.values.items()) os << "  value " << key << ": " << value.dump() << "\n";
    for (const auto& [key, text] : s.witnesses) os << "  witness " << key << ": " << text << "\n";
    if (s.solver.is_object() && s.solver.contains("summary"))
      for (const json& line : s.solver["summary"]) os << "  solver: " << line.get<std::string>() << "\n";
    for (const std::string& w : s.warnings) os << "  warning: " << w << "\n";
    for (const std::string& f : s.failures) os << "  FAIL: " << f << "\n";
    os << "  status: " << (s.passed() ? "pass" : "fail") << "\n";
    if (with_timing) os << "  seconds: " << std::fixed << std::setprecision(3) << s.seconds << "\n";
  }
  os << "result: " << (report.passed() ? "pass" : "fail") << " (exit " << report.exit_code() << ")\n";
  return os.str();
}

std::map<std::string, std::map<std::string, bool>> verdicts_of(const json& report) {
  std::map<std::string, std::map<std::string, bool>> out;
  for (const json& s : report.at("spaces")) {
    auto& m = out[s.at("name").get<std::string>()];
    for (const json& v : s.at("verdicts")) m[v.at("name").get<std::string>()] = v.at("value").get<bool>();
  }
  return out;
}

std::map<std::string, std::map<std::string, bool>> verdicts_of_text(const std::string& report) {
  std::map<std::string, std::map<std::string, bool>> out;
  std::istringstream in(report);
  std::string line;
  std::map<std::string, bool>* current = nullptr;
  const std::string space_tag = "space: ";
  const std::string verdict_tag = "  verdict ";
  while (std::getline(in, line)) {
    if (line.rfind(space_tag, 0) == 0) {
      std::size_t bracket = line.rfind(" [");
      current = &out[line.substr(space_tag.size(), bracket - space_tag.size())];
    } else if (current && line.rfind(verdict_tag, 0) == 0) {
      std::size_t colon = line.rfind(": ");
      (*current)[line.substr(verdict_tag.size(), colon - verdict_tag.size())] = line.substr(colon + 2) == "true";
    }
  }
  return out;
}

}  // namespace btp::cli
