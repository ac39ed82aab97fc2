// rba <command> --input <file.json> [--output <file.json>] [--max-degree K]
//     [--order-cap N] [--workers W] [command options]

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rba/commands.hpp"

namespace {

int emit(rba::Json body, const std::string& output, double elapsed_ms, unsigned workers) {
  body["timing"] = rba::Json{{"elapsed_ms", elapsed_ms}, {"workers", workers}};
  const std::string text = body.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(output, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "rba: cannot write " << output << "\n";
    return 1;
  }
  return 0;
}

std::optional<std::size_t> env_max_degree() {
  const char* v = std::getenv("RBA_MAX_DEGREE");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long k = std::strtoull(v, &end, 10);
  if (*end != '\0') throw rba::InputError(std::string("RBA_MAX_DEGREE is not a non-negative integer: ") + v);
  return static_cast<std::size_t>(k);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative Rota-Baxter operators on Leibniz algebras: checks, cohomology, deformations"};
  std::string command, input, output;
  rba::CommandOptions opts;
  std::size_t max_degree = 0, degree = 0, to_order = 0;
  std::string op, direction, element, series, name, values;

  std::string names;
  for (const auto& n : rba::command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "One of: " + names)->required();
  app.add_option("--input,-i", input, "Problem document (JSON)")->required();
  app.add_option("--output,-o", output, "Write the result here instead of stdout");
  auto* max_degree_opt = app.add_option("--max-degree", max_degree, "Largest cochain degree built (default 4, or RBA_MAX_DEGREE)");
  app.add_option("--order-cap", opts.order_cap, "Largest deformation order for extend")->capture_default_str();
  app.add_option("--workers", opts.workers, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  auto* degree_opt = app.add_option("--degree", degree, "Cochain degree (cohomology, sign-check)");
  auto* op_opt = app.add_option("--operator", op, "Operator name (default T)");
  auto* dir_opt = app.add_option("--direction", direction, "Deformation direction for linear-deform (default Tau)");
  auto* el_opt = app.add_option("--element", element, "Element name or comma-separated vector");
  auto* series_opt = app.add_option("--series", series, "Series name (default: all series)");
  auto* name_opt = app.add_option("--name", name, "Equivalence name (default: all)");
  auto* values_opt = app.add_option("--values", values, "Comma-separated value set for rb-search");
  app.add_option("--generator", opts.generators, "Nijenhuis generator for rigidity (repeatable)");
  auto* order_opt = app.add_option("--to-order", to_order, "Target order for extend (default: one more)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rba::kExitInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  rba::CommandResult result;
  try {
    if (*max_degree_opt) {
      opts.max_degree = max_degree;
    } else if (auto env = env_max_degree()) {
      opts.max_degree = *env;
    }
    if (*degree_opt) opts.degree = degree;
    if (*op_opt) opts.op = op;
    if (*dir_opt) opts.direction = direction;
    if (*el_opt) opts.element = element;
    if (*series_opt) opts.series = series;
    if (*name_opt) opts.name = name;
    if (*values_opt) opts.values = values;
    if (*order_opt) opts.to_order = to_order;

    std::ifstream in(input, std::ios::binary);
    if (!in) throw rba::InputError("cannot read " + input);
    std::stringstream buf;
    buf << in.rdbuf();
    result = rba::run_command_text(buf.str(), command, opts);
  } catch (const rba::InputError& e) {
    result = rba::error_result(command, e);
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (result.exit_code == rba::kExitInputError) {
    for (const auto& err : result.body["errors"]) {
      std::cerr << "rba: " << err["path"].get<std::string>() << (err["path"].get<std::string>().empty() ? "" : ": ")
                << err["message"].get<std::string>() << "\n";
    }
  }
  if (emit(result.body, output, ms, opts.workers) != 0) return rba::kExitInputError;
  return result.exit_code;
}
