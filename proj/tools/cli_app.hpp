#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "specialprimes/config.hpp"
#include "specialprimes/error.hpp"
#include "specialprimes/problem.hpp"

namespace sprimes_cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sprimes::ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline sprimes::ProblemFile load(const std::string& path) {
  try {
    return sprimes::parse_problem(read_file(path));
  } catch (const sprimes::ParseError& e) {
    throw sprimes::ParseError(path + ":" + e.what());
  }
}

inline std::optional<std::size_t> env_size(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  try {
    return static_cast<std::size_t>(std::stoull(v));
  } catch (const std::exception&) {
    throw sprimes::ParseError(std::string(name) + " must be a non-negative integer");
  }
}

// Parses argv, runs the command and writes its output. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frobenius-compatible and special primes over F_p[x_1..x_n]", "sprimes"};
  std::string command, file, ring_spec, json_path;
  std::map<std::string, std::string> args;
  unsigned e = 1;
  bool trace = false;
  std::size_t threads = 1;
  std::optional<std::size_t> max_gb, max_iter;

  app.add_option("command", command, "operation to run")->required()->check(CLI::IsMember(sprimes::command_names()));
  app.add_option("file", file, "problem file with a ring line and named objects");
  app.add_option("--ring", ring_spec, "ring when no file is given, e.g. \"p=2 vars=x,y order=grevlex\"");
  for (const char* role : {"I", "K", "V", "u", "U", "A"}) {
    app.add_option(std::string("--") + role, args[role],
                   "object name, inline value, or path to a problem file");
  }
  app.add_option("--e", e, "Frobenius exponent")->check(CLI::PositiveNumber);
  app.add_flag("--trace", trace, "print branch decisions as lines starting with #");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-gb", max_gb, "Groebner computations per decomposition (env SPRIMES_MAX_GB)");
  app.add_option("--max-iter", max_iter, "iteration cap for closure chains (env SPRIMES_MAX_ITER)");
  app.add_option("--json", json_path, "write a machine-readable result to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e_) {
    int rc = app.exit(e_, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!max_gb) max_gb = env_size("SPRIMES_MAX_GB");
    if (!max_iter) max_iter = env_size("SPRIMES_MAX_ITER");
    sprimes::Limits lim;
    if (max_gb) lim.max_gb = *max_gb;
    if (max_iter) lim.star_iterations = lim.kernel_iterations = lim.saturation_iterations = *max_iter;
    sprimes::set_limits(lim);
    sprimes::set_thread_count(threads);

    sprimes::ProblemFile pf;
    if (!file.empty()) pf = load(file);
    if (!ring_spec.empty()) {
      auto R = sprimes::parse_ring_spec(ring_spec);
      if (pf.ring && !pf.ring->same_as(*R)) throw sprimes::ParseError("--ring disagrees with the problem file");
      pf.ring = R;
    }

    sprimes::CommandRequest req{command, {}, e, trace};
    for (auto& [role, value] : args) {
      if (value.empty()) continue;
      std::error_code ec;
      if (!pf.has(value) && std::filesystem::is_regular_file(value, ec)) {
        value = sprimes::merge_problem(pf, load(value));
      }
      req.args[role] = value;
    }

    auto res = sprimes::run_command(pf, req);
    out << res.out << std::flush;
    err << res.err;
    if (!json_path.empty()) {
      std::ofstream js(json_path, std::ios::binary);
      js << res.json;
    }
    return res.exit_code;
  } catch (const sprimes::ParseError& x) {
    err << "parse error: " << x.what() << "\n";
    return 2;
  } catch (const std::exception& x) {
    err << "error: " << x.what() << "\n";
    return 2;
  }
}

}  // namespace sprimes_cli
