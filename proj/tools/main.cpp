#include <iostream>

#include "ringsim/run_spec.hpp"

int main(int argc, char** argv) {
  ringsim::ParseOutcome parsed = ringsim::parse_args(argc, argv);
  if (parsed.exit_code >= 0) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << "\n";
    return parsed.exit_code;
  }
  return ringsim::run_and_emit(parsed.spec, std::cerr);
}
