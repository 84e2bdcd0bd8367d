#include "stlobs/lustregen.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "numbers.hpp"

namespace stlobs::lustre {

namespace {

constexpr std::string_view kBasics = R"(-- Basic nodes shared by the temporal operators.

node min (x, y: int) returns (m: int);
let
  m = if x <= y then x else y;
tel

-- true from the first tick where prop held while time was true
node exist (time: bool; prop: bool) returns (found: bool);
let
  found = (time and prop) -> (pre found or (time and prop));
tel

-- true while prop held at every tick where time was true
node forall_a (time: bool; prop: bool) returns (holds: bool);
let
  holds = (not time or prop) -> (pre holds and (not time or prop));
tel

node timeab (const a, b: int) returns (time: bool);
(*@contract
  var clk : int = 0 -> 1 + pre clk;
  assume a >= 0;
  guarantee time = (clk >= a and clk <= b);
*)
var bounded_clk: int;
let
  -- saturates at b; the interval is over once the previous value was b
  bounded_clk = min(0 -> pre bounded_clk + 1, b);
  time = bounded_clk >= a and (true -> pre bounded_clk < b);
tel

node P_at_k (const k: int; clk: int; P: bool) returns (ok: bool);
let
  ok = if clk = k then P else (false -> pre ok);
tel
)";

constexpr std::string_view kEventually = R"(include "basics.lus"

node eventually_true (const a, b: int; phi: bool) returns (result_ev_true: bool);
let
  result_ev_true = exist(timeab(a, b), phi);
tel

node eventually_false (const a, b: int; phi: bool) returns (result_ev_false: bool);
var ev_time: int;
let
  ev_time = min(0 -> pre ev_time + 1, b);
  -- violated once b is reached and phi never held in [a, b]
  result_ev_false = (ev_time >= b) and forall_a(timeab(a, b), not phi);
tel

node eventually_3v (const a, b: int; phi: bool)
  returns (output_ev_true, output_ev_false: bool);
(*@contract
  assume a < b and a >= 0;
  guarantee not (output_ev_true and output_ev_false);
*)
let
  output_ev_true = eventually_true(a, b, phi);
  output_ev_false = eventually_false(a, b, phi);
tel
)";

constexpr std::string_view kAlways = R"(include "basics.lus"

node always_true (const a, b: int; phi: bool) returns (result_alw_true: bool);
var alw_time: int;
let
  alw_time = min(0 -> pre alw_time + 1, b);
  -- satisfied once b is reached and phi held throughout [a, b]
  result_alw_true = (alw_time >= b) and forall_a(timeab(a, b), phi);
tel

node always_false (const a, b: int; phi: bool) returns (result_alw_false: bool);
let
  result_alw_false = exist(timeab(a, b), not phi);
tel

node always_3v (const a, b: int; phi: bool)
  returns (output_alw_true, output_alw_false: bool);
(*@contract
  assume a < b and a >= 0;
  guarantee not (output_alw_true and output_alw_false);
*)
let
  output_alw_true = always_true(a, b, phi);
  output_alw_false = always_false(a, b, phi);
tel
)";

constexpr std::string_view kUntil = R"(include "basics.lus"

node until_true (const a, b: int; phi1, phi2: bool) returns (result_until_true: bool);
let
  -- some instant of [a, b] has phi2, with phi1 on every instant up to it
  result_until_true = exist(timeab(a, b), phi2 and forall_a(timeab(0, b), phi1));
tel

node until_false (const a, b: int; phi1, phi2: bool) returns (result_until_false: bool);
var until_time: int;
let
  until_time = min(0 -> pre until_time + 1, b);

  -- tick 0: decided by phi1 alone
  result_until_false = not phi1 -> (
    -- phi1 fails no later than a
    ((until_time <= a) and (not phi1)) or

    -- inside the interval: phi1 failed and no instant satisfied the operator yet
    ((until_time > a) and (until_time <= b) and
      exist(timeab(a, b), not phi1) and
      not exist(timeab(a, b), phi2 and forall_a(timeab(0, b), phi1))) or

    -- from b on: no instant of [a, b] satisfied it
    ((until_time >= b) and
      not exist(timeab(a, b), phi2 and forall_a(timeab(0, b), phi1))) or

    pre result_until_false);
tel

node until_3v (const a, b: int; phi1, phi2: bool)
  returns (output_until_true, output_until_false: bool);
(*@contract
  assume a < b and a >= 0;
  guarantee not (output_until_true and output_until_false);
*)
let
  output_until_true = until_true(a, b, phi1, phi2);
  output_until_false = until_false(a, b, phi1, phi2);
tel
)";

std::string_view operator_stem(TemporalKind kind) {
  switch (kind) {
    case TemporalKind::eventually: return "eventually";
    case TemporalKind::always: return "always";
    case TemporalKind::until: return "until";
  }
  throw std::invalid_argument("unknown temporal kind");
}

std::string_view polarity_word(Polarity p) { return p == Polarity::positive ? "true" : "false"; }

struct Obligations {
  std::string base;
  std::string ind;
};

// Unrolled forms of the explicit definitions. `out` is the operator over
// [a, b], `wide` the one over [a, b+1].
Obligations obligations(TemporalKind kind, Polarity p, const std::string& out,
                        const std::string& wide) {
  const bool pos = p == Polarity::positive;
  if (kind != TemporalKind::until) {
    const std::string arg = pos ? "phi" : "not phi";
    const bool disjunctive = (kind == TemporalKind::eventually) == pos;
    const std::string op = disjunctive ? " or " : " and ";
    return {"(b = a + 1) =>\n    (" + out + " = (P_at_k(a, clk, " + arg + ")" + op + "P_at_k(a + 1, clk, " +
                arg + ")));",
            "\n    (" + wide + " = (" + out + op + "P_at_k(b + 1, clk, " + arg + ")));"};
  }
  if (pos) {
    return {"(b = a + 1) =>\n    (" + out +
                " =\n      ((forall_a(timeab(0, a), phi1) and P_at_k(a, clk, phi2)) or\n"
                "       (forall_a(timeab(0, a + 1), phi1) and P_at_k(a + 1, clk, phi2))));",
            "\n    (" + wide + " =\n      (" + out +
                " or (forall_a(timeab(0, b + 1), phi1) and P_at_k(b + 1, clk, phi2))));"};
  }
  return {"(b = a + 1) =>\n    (" + out +
              " =\n      (exist(timeab(0, a), not phi1) or\n"
              "       (P_at_k(a + 1, clk, not phi1) and P_at_k(a, clk, not phi2)) or\n"
              "       (P_at_k(a, clk, not phi2) and P_at_k(a + 1, clk, not phi2))));",
          // the [a, b] observer may fire at b, the [a, b+1] one not before b + 1
          " (clk >= b + 1) =>\n    (" + wide + " =\n      (" + out +
              " and not (forall_a(timeab(0, b + 1), phi1) and P_at_k(b + 1, clk, phi2))));"};
}

}  // namespace

std::string_view short_name(TemporalKind kind) {
  switch (kind) {
    case TemporalKind::eventually: return "ev";
    case TemporalKind::always: return "alw";
    case TemporalKind::until: return "until";
  }
  throw std::invalid_argument("unknown temporal kind");
}

LustreSourceUnit emit_basic_nodes() {
  return {"basics.lus", std::string(kBasics), {"min", "exist", "forall_a", "timeab", "P_at_k"}};
}

LustreSourceUnit emit_operator_nodes(TemporalKind kind) {
  const std::string stem(operator_stem(kind));
  std::string_view text;
  switch (kind) {
    case TemporalKind::eventually: text = kEventually; break;
    case TemporalKind::always: text = kAlways; break;
    case TemporalKind::until: text = kUntil; break;
  }
  return {stem + ".lus", std::string(text), {stem + "_true", stem + "_false", stem + "_3v"}};
}

LustreSourceUnit emit_proof_node(TemporalKind kind, Polarity polarity) {
  const std::string stem(operator_stem(kind));
  const std::string word(polarity_word(polarity));
  const std::string op = stem + "_" + word;
  const std::string name = "proof_" + std::string(short_name(kind)) + "_" + word;
  const std::string out = "output_" + std::string(short_name(kind)) + "_" + word;
  const std::string wide = out + "_bp1";
  const bool until = kind == TemporalKind::until;
  const std::string inputs = until ? "phi1, phi2: bool" : "phi: bool";
  const std::string args = until ? "phi1, phi2" : "phi";
  const auto ob = obligations(kind, polarity, out, wide);

  std::ostringstream os;
  os << "include \"" << stem << ".lus\"\n\n";
  os << "node " << name << " (const a, b: int; " << inputs << ")\n";
  os << "  returns (base_case, ind_case: bool);\n";
  os << "(*@contract\n";
  os << "  assume a < b and a >= 0;\n";
  os << "  guarantee base_case;\n";
  os << "  guarantee ind_case;\n";
  os << "*)\n";
  os << "var clk: int;\n";
  os << "    " << out << ", " << wide << ": bool;\n";
  os << "let\n";
  os << "  clk = 0 -> 1 + pre clk;\n";
  os << "  " << out << " = " << op << "(a, b, " << args << ");\n";
  os << "  " << wide << " = " << op << "(a, b + 1, " << args << ");\n";
  os << "  base_case = " << ob.base << "\n";
  os << "  ind_case =" << ob.ind << "\n";
  os << "tel\n";
  return {name + ".lus", os.str(), {name}};
}

std::vector<LustreSourceUnit> emit_all(bool with_proofs) {
  const TemporalKind kinds[] = {TemporalKind::eventually, TemporalKind::always, TemporalKind::until};
  std::vector<LustreSourceUnit> units{emit_basic_nodes()};
  for (const auto k : kinds) units.push_back(emit_operator_nodes(k));
  if (with_proofs) {
    for (const auto k : kinds) {
      units.push_back(emit_proof_node(k, Polarity::positive));
      units.push_back(emit_proof_node(k, Polarity::negative));
    }
  }
  return units;
}

std::vector<std::filesystem::path> write_units(const std::vector<LustreSourceUnit>& units,
                                               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& u : units) {
    const auto path = dir / u.file_name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << u.source;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + path.string());
    paths.push_back(path);
  }
  return paths;
}

std::string_view to_string(PropertyStatus s) {
  switch (s) {
    case PropertyStatus::valid: return "valid";
    case PropertyStatus::falsifiable: return "falsifiable";
    case PropertyStatus::timeout: return "timeout";
  }
  return "?";
}

bool ProofReport::all_valid() const {
  if (skipped || !errors.empty() || properties.empty()) return false;
  for (const auto& p : properties) {
    if (p.status != PropertyStatus::valid) return false;
  }
  return true;
}

namespace {

bool is_executable(const std::filesystem::path& p) {
  std::error_code ec;
  const auto st = std::filesystem::status(p, ec);
  if (ec || !std::filesystem::is_regular_file(st)) return false;
  using std::filesystem::perms;
  return (st.permissions() & (perms::owner_exec | perms::group_exec | perms::others_exec)) !=
         perms::none;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::optional<std::filesystem::path> locate_checker(const std::optional<std::string>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) {
    if (is_executable(*explicit_path)) return std::filesystem::path(*explicit_path);
    return std::nullopt;
  }
  if (const char* env = std::getenv("STLOBS_CHECKER"); env && *env) {
    if (is_executable(env)) return std::filesystem::path(env);
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  if (!path) return std::nullopt;
  std::string_view rest(path);
  while (true) {
    const auto colon = rest.find(':');
    const std::string dir(rest.substr(0, colon));
    if (!dir.empty()) {
      const auto candidate = std::filesystem::path(dir) / "kind2";
      if (is_executable(candidate)) return candidate;
    }
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  return std::nullopt;
}

std::vector<PropertyResult> parse_checker_json(std::string_view text, const std::string& file) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("checker output is not JSON: ") + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("checker output is not a JSON array");
  std::vector<PropertyResult> out;
  for (const auto& item : doc) {
    if (!item.is_object()) throw std::runtime_error("checker output holds a non-object entry");
    if (item.value("objectType", "") != "property") continue;
    PropertyResult r;
    r.file = file;
    r.node = item.value("scope", "");
    r.property = item.value("name", "");
    std::string value;
    if (auto it = item.find("answer"); it != item.end() && it->is_object()) {
      value = it->value("value", "");
    }
    if (value == "valid") r.status = PropertyStatus::valid;
    else if (value == "falsifiable") r.status = PropertyStatus::falsifiable;
    else r.status = PropertyStatus::timeout;
    out.push_back(std::move(r));
  }
  return out;
}

ProofReport run_kind2(const std::vector<LustreSourceUnit>& units, const CheckerOptions& options) {
  ProofReport report;
  const auto exe = locate_checker(options.executable);
  if (!exe) {
    report.skipped = true;
    report.skip_reason = options.executable ? "checker not executable: " + *options.executable
                                            : "no checker executable found";
    return report;
  }
  const auto root = options.work_dir
                        ? *options.work_dir
                        : std::filesystem::temp_directory_path() /
                              ("stlobs-kind2-" + std::to_string(::getpid()));
  for (const auto& unit : units) {
    const auto dir = root / std::filesystem::path(unit.file_name).stem();
    write_units(units, dir);
    const auto err_path = dir / "checker.stderr";
    const std::string cmd = "cd " + shell_quote(dir.string()) + " && " +
                            shell_quote(exe->string()) + " -json --modular true --timeout " +
                            detail::format_double(options.timeout_s) + " " +
                            shell_quote(unit.file_name) + " 2>" + shell_quote(err_path.string());
    std::string output;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) {
      report.errors.push_back(unit.file_name + ": cannot start checker");
      continue;
    }
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
    const int status = ::pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    try {
      auto props = parse_checker_json(output, unit.file_name);
      for (auto& p : props) report.properties.push_back(std::move(p));
    } catch (const std::exception& e) {
      std::string msg = unit.file_name + ": checker exited with " + std::to_string(code) + ": " +
                        e.what();
      const std::string err = slurp(err_path);
      if (!err.empty()) msg += "\n" + err;
      if (!output.empty()) msg += "\n" + output;
      report.errors.push_back(std::move(msg));
    }
  }
  return report;
}

std::string render_text(const ProofReport& report) {
  std::ostringstream os;
  if (report.skipped) {
    os << "checker skipped: " << report.skip_reason << "\n";
    return os.str();
  }
  for (const auto& p : report.properties) {
    os << p.file << " " << p.node << " " << p.property << ": " << to_string(p.status) << "\n";
  }
  for (const auto& e : report.errors) os << "error: " << e << "\n";
  os << (report.all_valid() ? "all properties valid" : "not all properties valid") << "\n";
  return os.str();
}

}  // namespace stlobs::lustre
