#include <iostream>

#include "finverify/cli.hpp"

int main(int argc, char** argv) { return finverify::cli::run(argc, argv, std::cout, std::cerr); }
