#pragma once

#include <string>
#include <vector>

namespace acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool correct = false;
  double seconds = 0;  // total, or the worst single value where the budget is per value
  double budget = 0;
  std::string detail;
  bool pass() const { return correct && seconds < budget; }
};

// criteria 1..10
Result run(int id);
int count();
// suite name -> criterion ids; throws siegel::DomainError for an unknown name
std::vector<int> suite(const std::string& name);
std::vector<std::string> suite_names();

}  // namespace acceptance
