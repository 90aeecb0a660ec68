#include <iostream>

#include "padicqm/cli.hpp"

int main(int argc, char** argv) {
  return padicqm::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
