// Reads diagram files and prints type, hyperbolicity and threshold for each.
//
//   analyze demo/diagrams/*.txt

#include <fstream>
#include <iostream>
#include <sstream>

#include "coxeter/coxeter.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: analyze <diagram file>...\n";
    return 2;
  }
  int status = 0;
  for (int k = 1; k < argc; ++k) {
    std::ifstream file(argv[k]);
    std::stringstream text;
    text << file.rdbuf();
    std::cout << argv[k] << "\n";
    try {
      const auto sys = coxeter::parse_diagram(text.str());
      for (const auto& c : coxeter::classify(sys)) {
        std::cout << "  component " << c.type.name() << " ("
                  << coxeter::kind_name(c.type.kind) << ")\n";
      }
      const auto v = coxeter::is_hyperbolic(sys);
      std::cout << "  " << (v.hyperbolic ? "hyperbolic" : "not hyperbolic");
      if (v.witness) {
        std::cout << ", witness on " << v.witness->first.size() << " + "
                  << v.witness->second.size() << " vertices";
      }
      std::cout << "\n";
      if (sys.rank() > 0) {
        const auto t = coxeter::kazhdan_threshold(sys);
        std::cout << "  d = " << t.d << ", q >= " << t.bound_decimal << ", first prime power "
                  << t.q.str() << "\n";
      }
    } catch (const coxeter::ParseError& e) {
      std::cout << "  parse error at line " << e.line() << ", column " << e.column() << ": "
                << e.reason() << "\n";
      status = 2;
    }
  }
  return status;
}
