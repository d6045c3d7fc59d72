#include "mixed/sexpr.hpp"

#include <cctype>

#include "mixed/error.hpp"

namespace mixed {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  ProofText read_top() {
    skip();
    ProofText p = read_node();
    skip();
    if (i_ != s_.size()) throw ParseError("trailing input after proof", i_);
    return p;
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  std::string read_symbol() {
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')' && s_[i_] != '"')
      ++i_;
    if (start == i_) throw ParseError("expected a symbol", i_);
    return std::string(s_.substr(start, i_ - start));
  }

  std::string read_string() {
    if (i_ >= s_.size() || s_[i_] != '"') throw ParseError("expected a string", i_);
    ++i_;
    std::string out;
    while (true) {
      if (i_ >= s_.size()) throw ParseError("unterminated string", i_);
      char c = s_[i_++];
      if (c == '"') break;
      if (c == '\\') {
        if (i_ >= s_.size()) throw ParseError("unterminated escape", i_);
        char e = s_[i_++];
        out += e == 'n' ? '\n' : e;
      } else {
        out += c;
      }
    }
    return out;
  }

  ProofText read_node() {
    if (i_ >= s_.size() || s_[i_] != '(') throw ParseError("expected '('", i_);
    ++i_;
    skip();
    ProofText p;
    p.tag = read_symbol();
    skip();
    p.sequent = read_string();
    skip();
    while (i_ < s_.size() && s_[i_] == ':') {
      std::size_t at = i_;
      std::string key = read_symbol();
      if (key != ":principal") throw ParseError("unknown keyword '" + key + "'", at);
      if (p.principal) throw ParseError("duplicate :principal", at);
      skip();
      p.principal = read_string();
      skip();
    }
    while (i_ < s_.size() && s_[i_] == '(') {
      p.premises.push_back(read_node());
      skip();
    }
    if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
    ++i_;
    return p;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

void print_to(std::string& out, const ProofText& p, int indent) {
  out.append(static_cast<std::size_t>(indent), ' ');
  out += '(';
  out += p.tag;
  out += ' ';
  out += quote_string(p.sequent);
  if (p.principal) {
    out += " :principal ";
    out += quote_string(*p.principal);
  }
  for (const ProofText& q : p.premises) {
    out += '\n';
    print_to(out, q, indent + 2);
  }
  out += ')';
}

}  // namespace

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

ProofText parse_proof_text(std::string_view text) { return Reader(text).read_top(); }

std::string print_proof_text(const ProofText& p) {
  std::string out;
  print_to(out, p, 0);
  out += '\n';
  return out;
}

}  // namespace mixed
