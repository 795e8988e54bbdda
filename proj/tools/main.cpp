#include "oscillift/cli.hpp"

int main(int argc, char** argv) { return oscillift::cli::run(argc, argv); }
