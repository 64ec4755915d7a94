#include "plectic/problem_checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>

using namespace plectic;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CheckResult failed(int criterion, const std::string& name, const std::string& why) {
  CheckResult r;
  r.criterion = criterion;
  r.name = name;
  r.instances = 1;
  r.failures = 1;
  r.witness = why;
  return r;
}

} // namespace

int main() {
  SelftestOptions o;
  o.max_degree = max_degree_from_env();
  const std::string data = PLECTIC_DATA_DIR;

  std::map<int, std::vector<CheckResult>> by_criterion;
  std::map<int, double> seconds;
  const std::vector<std::function<CheckResult(const SelftestOptions&)>> suite{
      check_calculus, check_wedge_contraction, check_linfty,       check_heisenberg,   check_faces,
      check_kan,      check_homology,          check_quantization, check_inner_product};
  auto start = Clock::now();
  for (const auto& check : suite) {
    auto t0 = Clock::now();
    CheckResult r = check(o);
    seconds[r.criterion] = seconds_since(t0);
    by_criterion[r.criterion].push_back(std::move(r));
  }
  double suite_seconds = seconds_since(start);

  // Bundled complexes must be exercised for these criteria.
  const std::vector<int> needs_file{7, 9};
  try {
    Problem q3 = load_problem(data + "/q3.json");
    for (auto& r : check_problem(q3))
      if (r.instances > 0 || std::find(needs_file.begin(), needs_file.end(), r.criterion) != needs_file.end())
        by_criterion[r.criterion].push_back(std::move(r));
  } catch (const std::exception& e) {
    for (int c : needs_file)
      by_criterion[c].push_back(failed(c, "file: q3.json", e.what()));
  }
  try {
    Problem neg = load_problem(data + "/negative_jacobi.json");
    by_criterion[3].push_back(check_negative_control(neg, 3));
  } catch (const std::exception& e) {
    by_criterion[3].push_back(failed(3, "file: negative_jacobi.json", e.what()));
  }

  bool all = true;
  for (int c = 1; c <= 9; ++c) {
    bool ok = true;
    long instances = 0;
    std::string witness;
    for (const auto& r : by_criterion[c]) {
      instances += r.instances;
      if (!r.ok()) {
        ok = false;
        if (witness.empty())
          witness = r.name + ": " + (r.witness.empty() ? "no instances" : r.witness);
      }
    }
    std::string extra;
    if (c == 1) {
      extra = ", " + std::to_string(seconds[1]) + " s";
      if (seconds[1] >= 60) {
        ok = false;
        witness = "runtime " + std::to_string(seconds[1]) + " s exceeds 60 s";
      }
    }
    all = all && ok;
    std::cout << "criterion " << c << ": " << (ok ? "PASS" : "FAIL") << " (" << by_criterion[c].front().name << "; "
              << instances << " checks" << extra << ")";
    if (!ok)
      std::cout << " witness: " << witness;
    std::cout << "\n";
  }
  bool fast = suite_seconds < 300;
  std::cout << "randomized suite wall time " << suite_seconds << " s" << (fast ? "" : " (over 5 minutes)") << "\n";
  return all && fast ? 0 : 1;
}
