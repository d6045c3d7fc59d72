#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mixed {

// Proof-file node as it appears on disk, before the sequent and formula
// strings are interpreted by a particular calculus:
//   (<tag> "<sequent>" [:principal "<formula>"] <premise>*)
struct ProofText {
  std::string tag;
  std::string sequent;
  std::optional<std::string> principal;
  std::vector<ProofText> premises;
};

// Throws ParseError. Line comments start with ';' outside strings.
ProofText parse_proof_text(std::string_view text);
std::string print_proof_text(const ProofText& p);

// Quoting used inside proof files.
std::string quote_string(std::string_view s);

}  // namespace mixed
