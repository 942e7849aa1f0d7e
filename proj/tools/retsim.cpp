#include <iostream>

#include "ret/cli/app.hpp"

int main(int argc, char** argv) { return ret::cli::run(argc, argv, std::cout, std::cerr); }
