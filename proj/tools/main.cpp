#include "ordstat/cli.hpp"

int main(int argc, char** argv) { return ordstat::cli::run(argc, argv); }
