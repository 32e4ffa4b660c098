#include <iostream>

#include "uqtb/cli.h"

int main(int argc, char** argv)
{
  return uqtb::cli::main_entry(argc, argv, std::cout, std::cerr);
}
