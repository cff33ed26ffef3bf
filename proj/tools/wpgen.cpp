#include <iostream>
#include <string>
#include <vector>

#include "wpgen/driver.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    wpgen::Invocation inv = wpgen::parse_args(args);
    return wpgen::run(inv, std::cin, std::cout, std::cerr);
  } catch (const wpgen::Error& e) {
    std::cerr << "error: " << wpgen::to_string(e.code()) << ": " << e.message() << "\n"
              << wpgen::usage();
    return 3;
  }
}
