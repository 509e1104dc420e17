#include "glue/cli.hpp"
int main(int argc, char** argv) { return glue::cli_main(argc, argv); }
