#include <iostream>

#include "dynsamp/cli.hpp"
#include "dynsamp/kernels.hpp"

int main(int argc, char** argv) {
  dynsamp::kernels::apply_thread_cap_from_env();
  return dynsamp::cli::run(argc, argv, std::cout, std::cerr);
}
