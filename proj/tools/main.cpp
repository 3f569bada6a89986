#include "grassgeo/cli.hpp"

int main(int argc, char** argv) { return grassgeo::cli::run(argc, argv); }
