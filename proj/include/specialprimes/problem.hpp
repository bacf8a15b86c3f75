#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "specialprimes/matrix.hpp"

namespace sprimes {

// Named objects over one ring, read from the text format
//   ring p=<prime> vars=<name>(,<name>)* order=<lex|grevlex>
//   ideal <Name> = <poly>(, <poly>)*
//   matrix <Name> = [[<poly>, ...], ...]
//   poly <Name> = <poly>
// with '#' comments.
struct ProblemFile {
  RingPtr ring;
  std::vector<std::string> names;  // declaration order
  std::map<std::string, Ideal> ideals;
  std::map<std::string, PolyMatrix> matrices;
  std::map<std::string, Poly> polys;

  bool has(const std::string& name) const;
};

// Errors are ParseError with 1-based line and column.
ProblemFile parse_problem(std::string_view text);
std::string print_problem(const ProblemFile& pf);

// "p=2 vars=x,y order=grevlex", with or without the leading "ring".
RingPtr parse_ring_spec(std::string_view text);
PolyMatrix parse_matrix(const RingPtr& ring, std::string_view text);
std::vector<Poly> parse_poly_list(const RingPtr& ring, std::string_view text);

// Adds the objects of another problem file over the same ring (adopting its
// ring when pf has none) and returns the name of its first object. A clash
// with a different object of the same name is a ParseError.
std::string merge_problem(ProblemFile& pf, const ProblemFile& other);

struct CommandRequest {
  std::string command;  // gb | minprimes | ie | star | stablek | fedder | ks | kz | corank
  // Object arguments by role (I, K, V, u, U, A): a name from the problem file
  // or inline text.
  std::map<std::string, std::string> args;
  unsigned e = 1;
  bool trace = false;
};

struct CommandOutcome {
  int exit_code = 0;  // 0 ok, 1 mathematical error, 2 parse or usage error, 3 resource cap
  std::string out;    // canonical text, newline terminated
  std::string err;
  std::string json;   // machine-readable result
};

CommandOutcome run_command(const ProblemFile& pf, const CommandRequest& req);

const std::vector<std::string>& command_names();

}  // namespace sprimes
