#include <iostream>

#include "strat2trs/frontend.hpp"

int main(int argc, char** argv) { return strat::run_cli(argc, argv, std::cout, std::cerr); }
