#include "ainf/report.hpp"

namespace ainf {

std::string RelationReport::render(const std::string& title) const {
  std::string out = title + ": " + (pass() ? "PASS" : "FAIL");
  out += " (" + std::to_string(checked) + " instances";
  if (!pass()) out += ", " + std::to_string(failures.size()) + " failures";
  out += ")\n";
  for (const auto& n : notes) out += "note: " + n + "\n";
  for (const auto& f : failures) {
    out += "  " + f.where + " at (";
    for (std::size_t i = 0; i < f.tuple.size(); ++i) {
      if (i) out += ", ";
      out += f.tuple[i];
    }
    out += "): defect " + f.defect + "\n";
  }
  return out;
}

} // namespace ainf
