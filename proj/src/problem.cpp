#include "specialprimes/problem.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "specialprimes/config.hpp"
#include "specialprimes/error.hpp"
#include "specialprimes/fmodules.hpp"
#include "specialprimes/kz.hpp"
#include "specialprimes/primes.hpp"

namespace sprimes {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits at top-level commas (outside brackets and parentheses). Returns the
// pieces with their offsets in s.
// Errors report columns relative to offset.
std::vector<std::pair<std::string_view, std::size_t>> split_top(std::string_view s, std::size_t offset) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::vector<std::size_t> open;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    char c = i < s.size() ? s[i] : ',';
    if (c == '(' || c == '[') open.push_back(i);
    if (c == ')' || c == ']') {
      if (open.empty()) throw ParseError("unmatched closing bracket", 0, static_cast<int>(offset + i) + 1);
      open.pop_back();
    }
    if (c == ',' && open.empty()) {
      out.emplace_back(s.substr(start, i - start), start);
      start = i + 1;
    }
  }
  if (!open.empty()) throw ParseError("unclosed bracket", 0, static_cast<int>(offset + open.front()) + 1);
  return out;
}

std::size_t leading_space(std::string_view s) {
  std::size_t k = 0;
  while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
  return k;
}

// Parses a polynomial and shifts error columns by offset.
Poly parse_at(const RingPtr& R, std::string_view text, std::size_t offset) {
  try {
    return parse_poly(R, text);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    auto at = msg.rfind(" at offset ");
    if (at != std::string::npos) msg = msg.substr(0, at);
    throw ParseError(msg, 0, static_cast<int>(offset) + std::max(e.column(), 1));
  }
}

std::vector<Poly> parse_list_at(const RingPtr& R, std::string_view text, std::size_t offset) {
  std::vector<Poly> out;
  if (trim(text).empty()) throw ParseError("expected at least one polynomial", 0, static_cast<int>(offset) + 1);
  for (auto [piece, pos] : split_top(text, offset)) out.push_back(parse_at(R, piece, offset + pos));
  return out;
}

PolyMatrix parse_matrix_at(const RingPtr& R, std::string_view text, std::size_t offset) {
  split_top(text, offset);
  std::size_t lead = leading_space(text);
  std::string_view t = trim(text);
  auto fail = [&](const std::string& m, std::size_t at) { throw ParseError(m, 0, static_cast<int>(offset + at) + 1); };
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') fail("matrix must look like [[a, b], [c, d]]", lead);
  std::string_view inner = t.substr(1, t.size() - 2);
  std::vector<std::vector<Poly>> rows;
  for (auto [row, pos] : split_top(inner, offset + lead + 1)) {
    std::size_t rlead = leading_space(row);
    std::string_view r = trim(row);
    std::size_t base = lead + 1 + pos + rlead;
    if (r.size() < 2 || r.front() != '[' || r.back() != ']') fail("matrix row must be bracketed", base);
    rows.push_back(parse_list_at(R, r.substr(1, r.size() - 2), offset + base + 1));
    if (rows.back().size() != rows.front().size()) fail("matrix rows have different lengths", base);
  }
  return PolyMatrix::from_rows(R, rows);
}

bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

bool ProblemFile::has(const std::string& name) const {
  return ideals.count(name) || matrices.count(name) || polys.count(name);
}

RingPtr parse_ring_spec(std::string_view text) {
  std::istringstream in{std::string(trim(text))};
  std::string tok;
  std::optional<std::uint64_t> p;
  std::vector<std::string> vars;
  std::string order = "grevlex";
  bool first = true;
  while (in >> tok) {
    if (first && tok == "ring") {
      first = false;
      continue;
    }
    first = false;
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in ring declaration, got '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "p") {
      if (val.empty() || !std::all_of(val.begin(), val.end(), ::isdigit) || val.size() > 10)
        throw ParseError("p must be a positive integer");
      p = std::stoull(val);
    } else if (key == "vars") {
      vars.clear();
      std::string v;
      std::istringstream vs(val);
      while (std::getline(vs, v, ','))
        if (!v.empty()) vars.push_back(v);
      if (vars.empty()) throw ParseError("vars must list at least one variable");
    } else if (key == "order") {
      order = val;
    } else {
      throw ParseError("unknown ring key '" + key + "'");
    }
  }
  if (!p) throw ParseError("ring declaration needs p=<prime>");
  if (vars.empty()) throw ParseError("ring declaration needs vars=<names>");
  if (*p > 0xffffffffULL || !is_prime_number(*p)) throw ParseError("p must be prime");
  if (order != "lex" && order != "grevlex") throw ParseError("order must be lex or grevlex");
  try {
    return Ring::make(static_cast<std::uint32_t>(*p), vars, order);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

PolyMatrix parse_matrix(const RingPtr& ring, std::string_view text) { return parse_matrix_at(ring, text, 0); }

std::vector<Poly> parse_poly_list(const RingPtr& ring, std::string_view text) { return parse_list_at(ring, text, 0); }

ProblemFile parse_problem(std::string_view text) {
  ProblemFile pf;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    int ln = static_cast<int>(line_no);
    std::size_t lead = leading_space(line);
    std::string_view body = line.substr(lead);
    std::size_t kw_end = 0;
    while (kw_end < body.size() && !std::isspace(static_cast<unsigned char>(body[kw_end]))) ++kw_end;
    std::string kw(body.substr(0, kw_end));
    try {
      if (kw == "ring") {
        if (pf.ring) throw ParseError("only one ring declaration is allowed", ln, static_cast<int>(lead) + 1);
        try {
          pf.ring = parse_ring_spec(body);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), ln, static_cast<int>(lead) + 1);
        }
      } else if (kw == "ideal" || kw == "matrix" || kw == "poly") {
        if (!pf.ring) throw ParseError("the ring declaration must come first", ln, static_cast<int>(lead) + 1);
        std::size_t eq = body.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected '='", ln, static_cast<int>(lead + body.size()) + 1);
        std::string name(trim(body.substr(kw_end, eq - kw_end)));
        std::size_t name_col = lead + kw_end + leading_space(body.substr(kw_end)) + 1;
        if (!valid_name(name)) throw ParseError("invalid object name '" + name + "'", ln, static_cast<int>(name_col));
        if (pf.has(name)) throw ParseError("duplicate object name '" + name + "'", ln, static_cast<int>(name_col));
        std::size_t rhs_off = lead + eq + 1;
        std::string_view rhs = line.substr(rhs_off);
        try {
          if (kw == "ideal") {
            pf.ideals.emplace(name, make_ideal(pf.ring, parse_list_at(pf.ring, rhs, 0)));
          } else if (kw == "matrix") {
            pf.matrices.emplace(name, parse_matrix_at(pf.ring, rhs, 0));
          } else {
            pf.polys.emplace(name, parse_at(pf.ring, rhs, 0));
          }
        } catch (const ParseError& e) {
          std::string msg = e.what();
          if (auto c = msg.find(": "); e.line() > 0 && c != std::string::npos) msg = msg.substr(c + 2);
          throw ParseError(msg, ln, static_cast<int>(rhs_off) + std::max(e.column(), 1));
        }
        pf.names.push_back(name);
      } else {
        throw ParseError("unknown declaration '" + kw + "'", ln, static_cast<int>(lead) + 1);
      }
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), ln, std::max(e.column(), 1));
    }
    if (end == text.size()) break;
  }
  if (!pf.ring) throw ParseError("missing ring declaration", 1, 1);
  return pf;
}

std::string print_problem(const ProblemFile& pf) {
  std::string s = pf.ring ? pf.ring->ring_line() + "\n" : "";
  for (const auto& name : pf.names) {
    if (auto it = pf.ideals.find(name); it != pf.ideals.end()) {
      s += "ideal " + name + " = ";
      const auto& g = it->second.generators();
      if (g.empty()) s += "0";
      for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + g[i][0].to_string();
    } else if (auto m = pf.matrices.find(name); m != pf.matrices.end()) {
      s += "matrix " + name + " = " + m->second.to_string();
    } else {
      s += "poly " + name + " = " + pf.polys.at(name).to_string();
    }
    s += "\n";
  }
  return s;
}

std::string merge_problem(ProblemFile& pf, const ProblemFile& other) {
  if (!pf.ring) {
    pf.ring = other.ring;
  } else if (!pf.ring->same_as(*other.ring)) {
    throw ParseError("referenced file declares a different ring: " + other.ring->ring_line());
  }
  for (const auto& name : other.names) {
    if (pf.has(name)) {
      bool same = false;
      if (other.ideals.count(name) && pf.ideals.count(name)) same = other.ideals.at(name) == pf.ideals.at(name);
      if (other.matrices.count(name) && pf.matrices.count(name)) same = other.matrices.at(name) == pf.matrices.at(name);
      if (other.polys.count(name) && pf.polys.count(name)) same = other.polys.at(name) == pf.polys.at(name);
      if (!same) throw ParseError("object '" + name + "' is defined differently in two files");
      continue;
    }
    pf.names.push_back(name);
    if (other.ideals.count(name)) pf.ideals.emplace(name, other.ideals.at(name));
    if (other.matrices.count(name)) pf.matrices.emplace(name, other.matrices.at(name));
    if (other.polys.count(name)) pf.polys.emplace(name, other.polys.at(name));
  }
  if (other.names.empty()) throw ParseError("referenced file declares no objects");
  return other.names.front();
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"gb", "minprimes", "ie", "star", "stablek",
                                              "fedder", "ks", "kz", "corank"};
  return names;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Resolver {
  const ProblemFile& pf;
  const CommandRequest& req;

  std::optional<std::string> raw(const std::string& role) const {
    auto it = req.args.find(role);
    if (it == req.args.end()) return std::nullopt;
    return it->second;
  }

  std::string required(const std::string& role) const {
    auto v = raw(role);
    if (!v) throw UsageError("command '" + req.command + "' needs --" + role);
    return *v;
  }

  // When the option is omitted: the object named like the role, else the
  // first declared object of the given kind.
  std::optional<std::string> first_of(const std::string& kind) const {
    for (const auto& n : pf.names) {
      if (kind == "ideal" && pf.ideals.count(n)) return n;
      if (kind == "matrix" && pf.matrices.count(n)) return n;
      if (kind == "poly" && pf.polys.count(n)) return n;
    }
    return std::nullopt;
  }

  std::string value(const std::string& role, const std::string& kind) const {
    if (auto v = raw(role)) return *v;
    if (pf.has(role)) return role;
    if (auto n = first_of(kind)) return *n;
    throw UsageError("command '" + req.command + "' needs --" + role);
  }

  Ideal ideal(const std::string& role) const {
    std::string v = value(role, "ideal");
    if (pf.ideals.count(v)) return pf.ideals.at(v);
    if (pf.polys.count(v)) return make_ideal(pf.ring, {pf.polys.at(v)});
    if (pf.matrices.count(v)) throw UsageError("--" + role + " names a matrix, expected an ideal");
    return make_ideal(pf.ring, parse_poly_list(pf.ring, v));
  }

  Poly poly(const std::string& role) const {
    std::string v = value(role, "poly");
    if (pf.polys.count(v)) return pf.polys.at(v);
    if (pf.ideals.count(v)) {
      auto g = pf.ideals.at(v).generators();
      if (g.size() != 1) throw UsageError("--" + role + " names an ideal with more than one generator");
      return g[0][0];
    }
    if (pf.matrices.count(v)) throw UsageError("--" + role + " names a matrix, expected a polynomial");
    return parse_poly(pf.ring, v);
  }

  PolyMatrix matrix(const std::string& role) const {
    std::string v = value(role, "matrix");
    if (pf.matrices.count(v)) return pf.matrices.at(v);
    if (pf.polys.count(v)) return PolyMatrix::from_rows(pf.ring, {{pf.polys.at(v)}});
    if (pf.ideals.count(v)) throw UsageError("--" + role + " names an ideal, expected a matrix");
    return parse_matrix(pf.ring, v);
  }

  bool is_matrix(const std::string& role) const {
    auto v = raw(role);
    if (!v) return false;
    if (pf.matrices.count(*v)) return true;
    if (pf.has(*v)) return false;
    return !trim(*v).empty() && trim(*v).front() == '[';
  }

  // An ideal, or the column span of a matrix.
  Submodule submodule(const std::string& role) const {
    if (is_matrix(role)) return image(matrix(role));
    return ideal(role);
  }
};

std::string prime_lines(const std::vector<PrimeRecord>& primes, nlohmann::json& j) {
  std::string s;
  j["primes"] = nlohmann::json::array();
  for (const auto& r : primes) {
    s += r.ideal.to_string() + "\n";
    j["primes"].push_back({{"ideal", r.ideal.to_string()}, {"provenance", r.provenance}});
  }
  return s;
}

std::string single(const Submodule& S, nlohmann::json& j) {
  j["result"] = S.to_string();
  return S.to_string() + "\n";
}

std::string dispatch(const ProblemFile& pf, const CommandRequest& req, nlohmann::json& j) {
  Resolver r{pf, req};
  const std::string& c = req.command;
  unsigned e = req.e;
  if (e == 0) throw UsageError("--e must be positive");
  if (c == "gb") return single(r.ideal("I"), j);
  if (c == "minprimes") {
    Ideal I = r.ideal("I");
    if (I.is_full()) throw MathError("the unit ideal has no minimal primes");
    return prime_lines(minimal_primes(I), j);
  }
  if (c == "ie") return single(ie_operation(r.submodule("K"), e), j);
  if (c == "star") {
    Submodule V = r.submodule("V");
    if (r.raw("U")) return single(star_closure(V, r.matrix("U"), e), j);
    if (V.rank() != 1) throw UsageError("star on a module needs --U");
    return single(star_closure(V, r.poly("u"), e), j);
  }
  if (c == "stablek") return single(stable_kernel(r.matrix("U")), j);
  if (c == "fedder") {
    Ideal I = r.ideal("I");
    if (I.is_full()) throw MathError("fedder: the ideal must be proper");
    return single(fedder_colon(I, e), j);
  }
  if (c == "ks") {
    KSResult res = ks_run({r.poly("u"), e});
    j["excluded_locus"] = res.excluded_locus.to_string();
    return prime_lines(res.primes, j);
  }
  if (c == "kz") {
    if (e != 1) throw UsageError("kz supports only e = 1");
    KZResult res = kz_run({r.matrix("U")});
    j["stable_kernel"] = res.stable_kernel.to_string();
    return prime_lines(res.primes, j);
  }
  if (c == "corank") {
    if (e != 1) throw UsageError("corank supports only e = 1");
    RootData rd = validate_root(r.matrix("A"), r.matrix("U"));
    return prime_lines(corank_positive_primes(rd), j);
  }
  throw UsageError("unknown command '" + c + "'");
}

struct TraceScope {
  explicit TraceScope(std::string* sink) {
    if (sink) set_trace_sink([sink](const std::string& line) { *sink += line + "\n"; });
  }
  ~TraceScope() { set_trace_sink(nullptr); }
};

}  // namespace

CommandOutcome run_command(const ProblemFile& pf, const CommandRequest& req) {
  CommandOutcome out;
  nlohmann::json j;
  j["command"] = req.command;
  j["ring"] = pf.ring ? pf.ring->ring_line() : "";
  j["e"] = req.e;
  std::string trace_text;
  try {
    if (!pf.ring) throw UsageError("no ring: give --ring or a problem file");
    std::string result;
    {
      TraceScope scope(req.trace ? &trace_text : nullptr);
      if (req.trace) {
        std::string header = "# " + req.command;
        for (const auto& [k, v] : req.args) header += " " + k + "=" + v;
        header += " e=" + std::to_string(req.e);
        trace(header);
      }
      result = dispatch(pf, req, j);
    }
    out.out = trace_text + result;
    j["status"] = "ok";
  } catch (const ParseError& e) {
    out.exit_code = 2;
    out.err = std::string("parse error: ") + e.what() + "\n";
  } catch (const UsageError& e) {
    out.exit_code = 2;
    out.err = std::string("usage error: ") + e.what() + "\n";
  } catch (const ContextError& e) {
    out.exit_code = 2;
    out.err = std::string("input error: ") + e.what() + "\n";
  } catch (const ResourceError& e) {
    out.exit_code = 3;
    out.err = std::string("resource limit: ") + e.what() + "\n";
  } catch (const MathError& e) {
    out.exit_code = 1;
    out.err = std::string("math error: ") + e.what() + "\n";
  }
  if (out.exit_code != 0) {
    out.out = trace_text;
    j["status"] = "error";
    j["exit_code"] = out.exit_code;
    j["error"] = out.err.substr(0, out.err.size() - 1);
  }
  out.json = j.dump(2) + "\n";
  return out;
}

}  // namespace sprimes
