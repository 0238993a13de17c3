#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "carsym/checker.hpp"
#include "carsym/folner.hpp"
#include "carsym/json_io.hpp"
#include "carsym/parallel.hpp"
#include "carsym/parse.hpp"

namespace {

using namespace carsym;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitPrecondition = 3;

struct OutputSink {
  std::string path;  // empty = stdout
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (text.empty() || text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open output file '" + path + "'");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
  }
};

std::string render_complex_json(Complex v) {
  return nlohmann::ordered_json({{"re", v.real()}, {"im", v.imag()}}).dump();
}

std::string render_complex_text(Complex v) { return format_complex(v); }

struct CommonOptions {
  std::string state_text;
  std::string expr;
  std::string expr_file;
  std::string format = "json";
  std::string output;
  int degree_cap = 4;
  int window_size = 5;
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
  int random_count = 50;
  int threads = 0;

  int effective_threads() const { return threads > 0 ? threads : default_thread_count(); }
  CheckOptions check_options() const {
    CheckOptions o;
    o.degree_cap = degree_cap;
    o.window = centered_window(window_size);
    o.tolerance = tolerance;
    o.seed = seed;
    o.random_count = random_count;
    o.threads = effective_threads();
    return o;
  }
  std::string expression_text() const {
    if (!expr_file.empty()) {
      std::ifstream in(expr_file);
      if (!in) throw DomainError("cannot open expression file '" + expr_file + "'");
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      return text;
    }
    return expr;
  }
};

void add_state_option(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--state", opts.state_text,
                  "state descriptor: JSON, product:MU, vacuum, toeplitz:FILE, or a JSON file path")
      ->required();
}

void add_output_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--output", opts.output, "write the report to a file instead of stdout");
}

void add_battery_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--degree-cap", opts.degree_cap, "maximum word degree in batteries")->check(CLI::Range(1, 8));
  cmd->add_option("--window", opts.window_size, "battery window size (centered at 0)")->check(CLI::Range(1, 10));
  cmd->add_option("--tolerance", opts.tolerance, "override the battery tolerance");
  cmd->add_option("--seed", opts.seed, "seed for randomized battery parts");
  cmd->add_option("--count", opts.random_count, "random orthogonal products in the rotatable battery");
  cmd->add_option("--threads", opts.threads, "worker threads (default: CAR_SYM_THREADS or hardware)");
}

bool parse_range(const std::string& text, int& lo, int& hi) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo >= 1 && hi >= lo;
}

int verdict_exit(const SymmetryVerdict& v) { return v.holds ? kExitOk : kExitViolation; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic CAR algebra engine: normal ordering, state evaluation, symmetry batteries"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string symmetry;
  std::string folner_range = "1..3";
  int folner_m = 1;
  std::string folner_mode = "tuples";
  int average_n = 2;
  std::int64_t sample_count = 0;
  std::int64_t separation = 5;
  unsigned dyadic_level = 1;

  CLI::App* normal_order = app.add_subcommand("normal-order", "reduce an expression to normal form");
  normal_order->add_option("expr", opts.expr, "expression text")->required();

  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate a state on an expression");
  add_state_option(evaluate, opts);
  evaluate->add_option("--expr", opts.expr, "expression text");
  evaluate->add_option("--expr-file", opts.expr_file, "file containing the expression");
  add_output_options(evaluate, opts);

  CLI::App* check = app.add_subcommand("check", "run a symmetry battery");
  add_state_option(check, opts);
  check->add_option("--symmetry", symmetry,
                    "exchangeable | spreadable | rotatable | stationary | even | spreadable-even")
      ->required();
  add_battery_options(check, opts);
  add_output_options(check, opts);

  CLI::App* extremality = app.add_subcommand("extremality", "clustering-gap battery for spreadable states");
  add_state_option(extremality, opts);
  extremality->add_option("--separation", separation, "block separation k (must exceed the window diameter)");
  add_battery_options(extremality, opts);
  add_output_options(extremality, opts);

  CLI::App* folner_report = app.add_subcommand("folner-report", "exact F_n subset counts and ratios");
  folner_report->add_option("--n", folner_range, "n or a range like 1..3")->required();
  folner_report->add_option("--m", folner_m, "target window parameter m")->required()->check(CLI::Range(1, 64));
  folner_report->add_option("--mode", folner_mode, "count parameter tuples or distinct maps")
      ->check(CLI::IsMember({"tuples", "maps"}));
  folner_report->add_option("--threads", opts.threads, "worker threads");
  add_output_options(folner_report, opts);

  CLI::App* average = app.add_subcommand("average", "ergodic average of a state over F_n");
  add_state_option(average, opts);
  average->add_option("--expr", opts.expr, "expression text");
  average->add_option("--expr-file", opts.expr_file, "file containing the expression");
  average->add_option("--n", average_n, "Folner index n")->required();
  average->add_option("--sample", sample_count, "Monte Carlo sample count (required beyond the cap)");
  average->add_option("--seed", opts.seed, "sampling seed");
  average->add_option("--threads", opts.threads, "worker threads");
  add_output_options(average, opts);

  CLI::App* dyadic_check = app.add_subcommand("dyadic-check", "invariance of the pullback tower");
  add_state_option(dyadic_check, opts);
  dyadic_check->add_option("--level", dyadic_level, "tower level n")->check(CLI::Range(0, 6));
  add_battery_options(dyadic_check, opts);
  add_output_options(dyadic_check, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  OutputSink sink;
  sink.path = opts.output;

  // Inputs are parsed and validated first; failures there are usage errors.
  try {
    if (normal_order->parsed()) {
      CarPolynomial p = parse_expression(opts.expr);
      std::cout << p.str() << '\n';
      return kExitOk;
    }

    StatePtr state;
    CarPolynomial expr_poly;
    if (evaluate->parsed() || check->parsed() || extremality->parsed() || average->parsed() ||
        dyadic_check->parsed()) {
      state = state_from_descriptor(opts.state_text);
    }
    if (evaluate->parsed() || average->parsed()) {
      expr_poly = parse_expression(opts.expression_text());
    }

    try {
      if (evaluate->parsed()) {
        Complex v = state->evaluate(expr_poly);
        sink.write(opts.format == "text" ? render_complex_text(v) : render_complex_json(v));
        return kExitOk;
      }
      if (check->parsed()) {
        SymmetryVerdict v;
        if (symmetry == "spreadable-even") {
          v = check_spreadable_implies_even(*state, opts.check_options());
        } else {
          auto kind = symmetry_from_name(symmetry);
          if (!kind) throw CLI::ValidationError("--symmetry", "unknown symmetry '" + symmetry + "'");
          v = check_symmetry(*state, *kind, opts.check_options());
        }
        sink.write(v.to_json().dump(2));
        return verdict_exit(v);
      }
      if (extremality->parsed()) {
        SymmetryVerdict v = check_extremality(*state, separation, opts.check_options());
        sink.write(v.to_json().dump(2));
        return verdict_exit(v);
      }
      if (folner_report->parsed()) {
        int lo = 0, hi = 0;
        if (!parse_range(folner_range, lo, hi)) throw CLI::ValidationError("--n", "expected N or LO..HI");
        std::string out;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        if (opts.format != "json") out += subset_report_csv_header() + "\n";
        for (int n = lo; n <= hi; ++n) {
          FolnerSubsetReport r = subset_report(n, folner_m, folner_mode == "maps", opts.effective_threads());
          if (opts.format == "json")
            rows.push_back(subset_report_json(r));
          else
            out += subset_report_csv_row(r) + "\n";
        }
        sink.write(opts.format == "json" ? rows.dump(2) : out);
        return kExitOk;
      }
      if (average->parsed()) {
        Complex v;
        if (sample_count > 0) {
          v = ergodic_average_sampled(*state, expr_poly, average_n, sample_count, opts.seed);
        } else {
          v = ergodic_average(*state, expr_poly, average_n, opts.effective_threads());
        }
        sink.write(opts.format == "text" ? render_complex_text(v) : render_complex_json(v));
        return kExitOk;
      }
      if (dyadic_check->parsed()) {
        SymmetryVerdict v = check_dyadic_invariance(*state, dyadic_level, opts.check_options());
        sink.write(v.to_json().dump(2));
        return verdict_exit(v);
      }
    } catch (const PreconditionError& e) {
      std::cerr << "precondition failure: " << e.what() << '\n';
      return kExitPrecondition;
    } catch (const DomainError& e) {
      std::cerr << "precondition failure: " << e.what() << '\n';
      return kExitPrecondition;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
