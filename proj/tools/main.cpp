#include "ranksde/cli.hpp"

int main(int argc, char** argv) { return ranksde::cli_main(argc, argv); }
