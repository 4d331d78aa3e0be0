#include <chrono>
#include <sstream>

#if defined(__x86_64__) || defined(__i386__)
#include <x86intrin.h>
#define INCTYPE_HAVE_RDTSC 1
#endif

#include "inctype/bench.hpp"
#include "inctype/engine.hpp"
#include "inctype/reference.hpp"

namespace inctype {

Timer::Timer(TimerKind k) : kind_(k == TimerKind::Rdtsc && !rdtsc_available() ? TimerKind::Monotonic : k) {}

bool Timer::rdtsc_available() {
#ifdef INCTYPE_HAVE_RDTSC
  return true;
#else
  return false;
#endif
}

std::uint64_t Timer::now() const {
#ifdef INCTYPE_HAVE_RDTSC
  if (kind_ == TimerKind::Rdtsc) return __rdtsc();
#endif
  auto t = std::chrono::steady_clock::now().time_since_epoch();
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t).count());
}

namespace {

bool is_deletion(const Node& target, const Action& a) {
  if (a.kind == ActionKind::Delete) return true;
  return a.kind == ActionKind::Unwrap && target.kids.size() > 1;
}

}  // namespace

BenchReport run_bench(const BenchConfig& cfg) {
  BareExpr program = tower_program(cfg.layers, cfg.seed);
  EditTrace edits = gen_random_edits(program, cfg.edits, cfg.seed + 1);

  Timer timer(cfg.timer);
  BenchReport report;
  report.unit = timer.unit();
  report.timer_fallback = timer.kind() != cfg.timer;
  report.program_nodes = node_count(program);

  // Each side runs as its own pass so neither evicts the other's working set
  // from cache between timed regions.
  Doc doc(program);
  std::uint64_t inc_total = 0;
  for (const LocalizedAction& la : edits) {
    BenchRow row;
    row.edit_kind = action_name(la.action.kind);
    const Node* target = doc.node_at(la.path);
    row.deletion = is_deletion(*target, la.action);
    std::uint64_t visits_before = doc.counters().node_visits;
    std::uint64_t t0 = timer.now();
    doc.apply(target, la.action);
    row.steps = doc.run_to_quiescence();
    std::uint64_t t1 = timer.now();
    row.inc_time = t1 - t0;
    row.node_visits = doc.counters().node_visits - visits_before;
    row.node_count = doc.node_count();
    inc_total += row.inc_time;
    report.rows.push_back(std::move(row));
  }

  Zipper zipper(program);
  std::uint64_t scratch_total = 0;
  for (std::size_t i = 0; i < edits.size(); ++i) {
    zipper.move_to(edits[i].path);
    std::uint64_t t0 = timer.now();
    zipper.perform(edits[i].action);
    AnnExpr expected = zipper.check();
    std::uint64_t t1 = timer.now();
    report.rows[i].scratch_time = t1 - t0;
    scratch_total += t1 - t0;
  }

  if (cfg.verify) {
    Doc replay(program);
    Zipper base(program);
    for (std::size_t i = 0; i < edits.size(); ++i) {
      replay.apply(edits[i]);
      replay.run_to_quiescence();
      base.move_to(edits[i].path);
      base.perform(edits[i].action);
      if (replay.snapshot() != base.check())
        throw ResultMismatch("edit " + std::to_string(i) + " (" + print(edits[i]) +
                             "): incremental marking differs from the baseline");
    }
    if (doc.snapshot() != replay.snapshot())
      throw ResultMismatch("timed run diverged from the verification replay");
  }
  report.total_speedup =
      inc_total == 0 ? 0.0 : static_cast<double>(scratch_total) / static_cast<double>(inc_total);
  return report;
}

std::string to_csv(const BenchReport& r) {
  std::ostringstream out;
  out << "# program_nodes=" << r.program_nodes << " unit=" << r.unit
      << " timer_fallback=" << (r.timer_fallback ? 1 : 0)
      << " recursion=ascribed-holes\n";
  out << "edit_kind,inc_time,scratch_time,node_count,steps\n";
  for (const BenchRow& row : r.rows)
    out << row.edit_kind << ',' << row.inc_time << ',' << row.scratch_time << ','
        << row.node_count << ',' << row.steps << '\n';
  out << "# total_speedup=" << r.total_speedup << '\n';
  return out.str();
}

}  // namespace inctype
