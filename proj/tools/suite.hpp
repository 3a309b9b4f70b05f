#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace alexgeo::suite {

struct Options {
  bool quick = false;  // reduced sample counts, same tolerances
  std::uint64_t seed = 1;
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  std::vector<std::pair<std::string, double>> metrics;
  double seconds = 0;
};

int criterion_count();
std::string criterion_name(int id);
Result run_criterion(int id, const Options& opts = {});
std::vector<Result> run_all(const Options& opts = {});

// One line per criterion: "PASS  3 gexp shortness: ...".
std::string format_line(const Result& r);

}  // namespace alexgeo::suite
