// Prints every formula over the given atoms up to a symbol bound, one per line.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixed/error.hpp"
#include "mixed/oracle.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> atoms{"x_c", "y_c", "bot"};
  std::size_t max_symbols = 5;
  CLI::App app{"Enumerate formulas"};
  app.add_option("--atoms", atoms, "Atoms (variables, 0 or bot)")->delimiter(',')->capture_default_str();
  app.add_option("--max-symbols", max_symbols, "Symbol bound")->capture_default_str()->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<mixed::Formula> fs;
    for (const std::string& a : atoms) fs.push_back(mixed::parse_formula(a));
    for (const mixed::Formula& f : mixed::enumerate_formulas(fs, max_symbols)) std::cout << f.str() << "\n";
  } catch (const mixed::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
