#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace epk {

struct CaseCheck {
  std::string name;
  std::string expected;
  std::string actual;
  double tolerance = 0.0;
  bool pass = false;
};

struct CaseResult {
  std::string id;
  std::string note;
  std::vector<CaseCheck> checks;
  bool pass() const;
};

const std::vector<std::string>& reproduce_cases();

/// Directory with one <case>.json per case: EPK_GOLDEN_DIR from the
/// environment, else the in-tree data/golden.
std::filesystem::path default_golden_dir();

/// Recomputes a case and compares against its golden file.
/// Unknown ids throw std::invalid_argument.
CaseResult reproduce(const std::string& id, const std::filesystem::path& golden_dir = default_golden_dir());

}  // namespace epk
