// mixed: batch front end for the ML_P proof kernel.
//
// Exit codes: 0 success, 1 invalid proof (or no proof found by `prove`),
// 2 precondition violation, 3 I/O, parse or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mixed/calculus.hpp"
#include "mixed/cutelim.hpp"
#include "mixed/embeddings.hpp"
#include "mixed/error.hpp"
#include "mixed/linear.hpp"
#include "mixed/oracle.hpp"

namespace {

using namespace mixed;

enum ExitCode { kOk = 0, kInvalid = 1, kPrecondition = 2, kIoError = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string input;
  std::string policy = "cvars";
  std::string output;
  std::size_t depth = 10;
  std::size_t mult_cap = 2;
  bool trace = false;
  std::string theorem;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw IoError("cannot write " + o.output);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw IoError("write failed for " + o.output);
}

int report_failures(const CheckReport& r) {
  for (const CheckFailure& f : r.failures) std::cerr << f.path << ": " << f.message << "\n";
  return r.ok ? kOk : kInvalid;
}

enum class Calculus { Mlp, Lk, Lj, Ll };

Calculus detect(const std::string& text) {
  ProofText p = parse_proof_text(text);
  if (p.tag.rfind("lk.", 0) == 0) return Calculus::Lk;
  if (p.tag.rfind("lj.", 0) == 0) return Calculus::Lj;
  if (ll_rule_from_name(p.tag)) return Calculus::Ll;
  return Calculus::Mlp;
}

// Parses an ML_P proof and rejects it (exit 1) when it does not check.
std::optional<Derivation> load_valid(const Options& o, const PPolicy& policy) {
  Derivation d = parse_proof(read_file(o.input));
  CheckReport r = check_derivation(d, policy);
  if (!r.ok) {
    report_failures(r);
    return std::nullopt;
  }
  return d;
}

int cmd_check(const Options& o, const PPolicy& policy) {
  std::string text = read_file(o.input);
  switch (detect(text)) {
    case Calculus::Lk: return report_failures(check_lk(parse_lk_proof(text)));
    case Calculus::Lj: return report_failures(check_lj(parse_lj_proof(text)));
    case Calculus::Ll: return report_failures(check_ll(parse_ll_proof(text)));
    case Calculus::Mlp: break;
  }
  return report_failures(check_derivation(parse_proof(text), policy));
}

int cmd_normalize(const Options& o, const PPolicy& policy) {
  auto d = load_valid(o, policy);
  if (!d) return kInvalid;
  NormalizeOptions opts;
  if (o.trace) {
    opts.trace = [](const ReductionStep& s) {
      std::cerr << "step " << s.step << " at " << path_string(s.path) << " cut " << degree_string(s.cut)
                << " degree " << degree_string(s.before) << " -> " << degree_string(s.after) << "\n";
    };
  }
  Derivation n = normalize(*d, policy, opts);
  CheckReport r = check_derivation(n, policy);
  if (!r.ok || !is_cut_free(n) || !(n.conclusion() == d->conclusion()))
    throw InternalError("normal form failed verification: " + r.summary());
  emit(o, print_proof(n));
  return kOk;
}

int cmd_translate_ll(const Options& o, const PPolicy& policy) {
  auto d = load_valid(o, policy);
  if (!d) return kInvalid;
  LLDerivation t = translate_derivation(*d, policy);
  CheckReport r = check_ll(t);
  if (!r.ok || !(t.conclusion() == translate_sequent(d->conclusion(), policy))) {
    std::cerr << "refusing to write an LL proof that fails the checker\n";
    report_failures(r);
    return kInvalid;
  }
  emit(o, print_ll_proof(t));
  return kOk;
}

int cmd_embed_lk(const Options& o, const PPolicy& policy) {
  LKDerivation d = parse_lk_proof(read_file(o.input));
  if (int rc = report_failures(check_lk(d)); rc != kOk) return rc;
  emit(o, print_proof(lk_to_mlp(d, policy, subformula_closure(formulas_of(d)))));
  return kOk;
}

int cmd_extract_lk(const Options& o, const PPolicy& policy) {
  auto d = load_valid(o, policy);
  if (!d) return kInvalid;
  emit(o, print_lk_proof(mlp_to_lk(*d, policy, subformula_closure(formulas_of(*d)))));
  return kOk;
}

int cmd_embed_lj(const Options& o, const PPolicy& policy) {
  LJDerivation d = parse_lj_proof(read_file(o.input));
  if (int rc = report_failures(check_lj(d)); rc != kOk) return rc;
  emit(o, print_proof(lj_to_mlp(d, policy)));
  return kOk;
}

int cmd_extract_lj(const Options& o, const PPolicy& policy) {
  auto d = load_valid(o, policy);
  if (!d) return kInvalid;
  emit(o, print_lj_proof(mlp_to_lj(*d, policy, subformula_closure(formulas_of(*d)))));
  return kOk;
}

// Input: a file with one sequent per line, or a literal sequent.
int cmd_prove(const Options& o, const PPolicy& policy) {
  std::string text;
  if (std::ifstream probe(o.input); probe) {
    text = read_file(o.input);
  } else if (o.input.find("|-") != std::string::npos) {
    text = o.input;
  } else {
    throw IoError("cannot read " + o.input);
  }
  SearchConfig cfg{o.depth, o.mult_cap};
  std::istringstream lines(text);
  std::string line;
  std::string out;
  bool all_found = true;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
      continue;
    PSequent s = parse_sequent(line);
    if (auto d = prove_bounded(s, policy, cfg)) {
      out += print_proof(*d);
      if (out.back() != '\n') out += '\n';
    } else {
      out += "; " + print_sequent(s) + "\nunknown (bound reached)\n";
      all_found = false;
    }
  }
  emit(o, out);
  return all_found ? kOk : kInvalid;
}

int cmd_policy_check(const Options& o, const PPolicy& policy) {
  FormulaSet set = read_formula_list(read_file(o.input));
  auto verdict = [&](const char* name, auto&& require) {
    try {
      require(set, policy);
      std::cout << name << ": ok\n";
      return true;
    } catch (const PreconditionError& e) {
      std::cout << name << ": " << e.what() << "\n";
      return false;
    }
  };
  bool lk = true;
  bool lj = true;
  if (o.theorem != "lj") lk = verdict("lk", require_lk_hypotheses);
  if (o.theorem != "lk") lj = verdict("lj", require_lj_hypotheses);
  if (o.theorem == "lk") return lk ? kOk : kPrecondition;
  if (o.theorem == "lj") return lj ? kOk : kPrecondition;
  return lk || lj ? kOk : kPrecondition;
}

int dispatch(const Options& o) {
  PPolicy policy = PPolicy::parse(o.policy);
  if (o.command == "check") return cmd_check(o, policy);
  if (o.command == "normalize") return cmd_normalize(o, policy);
  if (o.command == "translate-ll") return cmd_translate_ll(o, policy);
  if (o.command == "embed-lk") return cmd_embed_lk(o, policy);
  if (o.command == "extract-lk") return cmd_extract_lk(o, policy);
  if (o.command == "embed-lj") return cmd_embed_lj(o, policy);
  if (o.command == "extract-lj") return cmd_extract_lj(o, policy);
  if (o.command == "prove") return cmd_prove(o, policy);
  return cmd_policy_check(o, policy);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Proof kernel for the mixed calculus ML_P"};
  app.add_option("command", o.command, "Command to run")
      ->required()
      ->check(CLI::IsMember({"check", "normalize", "translate-ll", "embed-lk", "extract-lk", "embed-lj",
                             "extract-lj", "prove", "policy-check"}));
  app.add_option("input", o.input, "Input file (prove also accepts a literal sequent)")->required();
  app.add_option("--policy", o.policy, "Parameter set P: all, bot, cvars or file:<path>")->capture_default_str();
  app.add_option("-o,--output", o.output, "Output file (default: stdout)");
  app.add_option("--depth", o.depth, "Search depth for prove")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--mult-cap", o.mult_cap, "Antecedent multiplicity cap for prove")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_flag("--trace", o.trace, "normalize: print one line per reduction to stderr");
  app.add_option("--theorem", o.theorem, "policy-check: lk or lj (default: report both)")
      ->check(CLI::IsMember({"lk", "lj"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kIoError;
  }

  try {
    return dispatch(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIoError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const InternalError& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kInvalid;
  } catch (const StepBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
