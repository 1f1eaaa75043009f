#include <iostream>

#include <equifuse/cli.hpp>

int main(int argc, char **argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return equifuse::cli::run(args, std::cout, std::cerr);
}
