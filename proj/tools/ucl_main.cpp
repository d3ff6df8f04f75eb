#include "ucl/cli.hpp"

int main(int argc, char** argv) { return ucl::cli_dispatch(argc, argv); }
