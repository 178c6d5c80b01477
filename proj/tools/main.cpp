#include "cli.hpp"

int main(int argc, char** argv) { return finosc::cli::run(argc, argv); }
