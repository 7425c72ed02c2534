#include <iostream>
#include <string>
#include <vector>

#include "cvtele/cli.hpp"

int main(int argc, char** argv)
{
  return cvtele::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
