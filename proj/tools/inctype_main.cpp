#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "inctype/bench.hpp"
#include "inctype/engine.hpp"
#include "inctype/reference.hpp"
#include "inctype/server.hpp"

using namespace inctype;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_check(const std::string& file) {
  BareExpr e = parse_expr(read_file(file));
  AnnExpr m = mark_program(e);
  std::size_t errors = error_count(m);
  std::cout << print_decorated(m) << "\nerrors: " << errors << "\n";
  return errors == 0 ? 0 : 1;
}

enum class StepMode { Eager, PerAction, Manual };

int cmd_trace(const std::string& file, const std::string& program_file, StepMode mode) {
  BareExpr program = program_file.empty() ? bare::hole() : parse_expr(read_file(program_file));
  Doc doc(program);
  std::istringstream lines(read_file(file));
  std::string line;
  std::size_t lineno = 0, actions = 0, steps = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    try {
      doc.apply(parse_localized(line));
    } catch (const std::exception& e) {
      std::cerr << file << ":" << lineno << ": " << e.what() << "\n";
      return 1;
    }
    ++actions;
    if (mode == StepMode::Eager) {
      steps += doc.run_to_quiescence();
    } else if (mode == StepMode::PerAction && !doc.step().quiescent) {
      ++steps;
    }
  }
  if (mode == StepMode::PerAction) steps += doc.run_to_quiescence();
  AnnExpr snap = doc.snapshot();
  std::cout << print_decorated(snap) << "\nactions: " << actions << "\nsteps: " << steps
            << "\ndirty: " << doc.dirty_count() << "\nquiescent: " << (doc.quiescent() ? "yes" : "no")
            << "\nerrors: " << error_count(snap) << "\n";
  return 0;
}

int cmd_bench(const BenchConfig& cfg, const std::string& output) {
  BenchReport r = run_bench(cfg);
  std::string csv = to_csv(r);
  if (output.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + output);
    out << csv;
  }
  std::cerr << "layers=" << cfg.layers << " nodes=" << r.program_nodes << " edits=" << r.rows.size()
            << " unit=" << r.unit << (r.timer_fallback ? " (cycle counter unavailable)" : "")
            << " total_speedup=" << r.total_speedup << "\n";
  return 0;
}

SocketServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(std::uint16_t port) {
  SessionManager mgr;
  SocketServer server(mgr);
  std::uint16_t bound = server.listen(port);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on 127.0.0.1:" << bound << std::endl;
  server.serve();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental type checker for a gradually typed lambda calculus with holes"};
  app.require_subcommand(1);

  std::string check_file;
  auto* check = app.add_subcommand("check", "Mark a program from scratch; exit 1 if it has errors");
  check->add_option("file", check_file, "program file")->required();

  std::string trace_file, program_file;
  StepMode mode = StepMode::Eager;
  std::map<std::string, StepMode> modes{
      {"eager", StepMode::Eager}, {"per-action", StepMode::PerAction}, {"manual", StepMode::Manual}};
  auto* trace = app.add_subcommand("trace", "Replay an edit trace on the incremental engine");
  trace->add_option("file", trace_file, "trace file")->required();
  trace->add_option("--program", program_file, "starting program (default: a hole)");
  trace->add_option("--step-mode", mode, "eager | per-action | manual")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));

  BenchConfig cfg;
  std::string timer = "rdtsc", output;
  auto* bench = app.add_subcommand("bench", "Compare incremental and from-scratch checking on a mergesort tower");
  bench->add_option("--layers", cfg.layers, "tower layers")->check(CLI::PositiveNumber);
  bench->add_option("--edits", cfg.edits, "change/revert pairs");
  bench->add_option("--seed", cfg.seed, "random seed");
  bench->add_option("--timer", timer, "rdtsc | monotonic")->check(CLI::IsMember({"rdtsc", "monotonic"}));
  bench->add_option("--output", output, "CSV path (default: stdout)");
  bench->add_flag("!--no-verify", cfg.verify, "skip the baseline equality check");

  std::uint16_t port = 7878;
  auto* serve = app.add_subcommand("serve", "Run the session server");
  serve->add_option("--port", port, "TCP port on 127.0.0.1 (0 picks one)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*check) return cmd_check(check_file);
    if (*trace) return cmd_trace(trace_file, program_file, mode);
    if (*bench) {
      cfg.timer = timer == "rdtsc" ? TimerKind::Rdtsc : TimerKind::Monotonic;
      return cmd_bench(cfg, output);
    }
    if (*serve) return cmd_serve(port);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
