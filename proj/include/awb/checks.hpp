#pragma once

// Named pass/fail items collected by the sequence and extension checks.
// Hypothesis failures (bad input) are kept apart from conclusion failures
// (a theorem that did not hold on the data).

#include <string>
#include <vector>

namespace awb {

enum class CheckRole { hypothesis, conclusion };

struct CheckItem {
  std::string name;
  CheckRole role = CheckRole::conclusion;
  bool passed = false;
  std::string detail;
};

struct CheckList {
  std::vector<CheckItem> items;

  bool add(std::string name, CheckRole role, bool passed, std::string detail = {}) {
    items.push_back({std::move(name), role, passed, std::move(detail)});
    return passed;
  }
  bool hypothesis(std::string name, bool passed, std::string detail = {}) {
    return add(std::move(name), CheckRole::hypothesis, passed, std::move(detail));
  }
  bool conclusion(std::string name, bool passed, std::string detail = {}) {
    return add(std::move(name), CheckRole::conclusion, passed, std::move(detail));
  }

  bool hypotheses_hold() const {
    for (const auto& c : items)
      if (c.role == CheckRole::hypothesis && !c.passed) return false;
    return true;
  }
  bool ok() const {
    for (const auto& c : items)
      if (!c.passed) return false;
    return true;
  }
  const CheckItem* find(const std::string& name) const {
    for (const auto& c : items)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool passed(const std::string& name) const {
    const CheckItem* c = find(name);
    return c && c->passed;
  }

  /// One line per item: "ok   name  detail" / "FAIL name  detail".
  std::string describe() const {
    std::string out;
    for (const auto& c : items) {
      out += c.passed ? "ok   " : "FAIL ";
      out += c.name;
      if (!c.detail.empty()) out += "  " + c.detail;
      out += '\n';
    }
    return out;
  }
};

}  // namespace awb
