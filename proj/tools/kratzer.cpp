#include <iostream>

#include "kratzer/shell/commands.hpp"

int main(int argc, char** argv) { return kratzer::shell::run_cli(argc, argv, std::cout, std::cerr); }
