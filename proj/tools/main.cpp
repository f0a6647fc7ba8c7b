#include "delaystab/cli.hpp"

int main(int argc, char** argv) { return delaystab::cli::run(argc, argv); }
