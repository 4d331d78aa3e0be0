#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "inctype/actions.hpp"
#include "inctype/syntax.hpp"

namespace inctype {

// A tower of mergesort implementations. Each layer binds split_i and merge_i
// and rebinds `mergesort`, whose implementation picks one in-scope split and
// merge at random. Lets are encoded as ((asc (lam x T body) (arrow T L)) def).
BareExpr tower_program(int layers, std::uint64_t seed);
// Builds tower_program(layers, seed) from a hole, constructing the parts of
// every node in random order.
EditTrace gen_tower(int layers, std::uint64_t seed);

// Change-and-revert edit pairs at uniformly random locations. Every pair
// restores the program, so all paths refer to `program`.
EditTrace gen_random_edits(const BareExpr& program, std::size_t pairs, std::uint64_t seed);

enum class TimerKind { Rdtsc, Monotonic };

class Timer {
 public:
  explicit Timer(TimerKind k);
  std::uint64_t now() const;
  TimerKind kind() const { return kind_; }
  const char* unit() const { return kind_ == TimerKind::Rdtsc ? "cycles" : "ns"; }
  static bool rdtsc_available();

 private:
  TimerKind kind_;
};

struct BenchConfig {
  int layers = 20;
  std::size_t edits = 200;
  std::uint64_t seed = 1;
  TimerKind timer = TimerKind::Rdtsc;
  bool verify = true;
};

struct BenchRow {
  std::string edit_kind;
  std::uint64_t inc_time = 0;
  std::uint64_t scratch_time = 0;
  std::size_t node_count = 0;
  std::size_t steps = 0;
  std::uint64_t node_visits = 0;
  bool deletion = false;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::size_t program_nodes = 0;
  double total_speedup = 0;
  const char* unit = "";
  // Set when the cycle counter was requested but unavailable.
  bool timer_fallback = false;
};

// The engine disagreed with the from-scratch baseline.
class ResultMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BenchReport run_bench(const BenchConfig& cfg);
std::string to_csv(const BenchReport& r);

}  // namespace inctype
