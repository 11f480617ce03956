#include <groupeq/cli.hpp>

int main(int argc, char** argv) { return groupeq::cli_main(argc, argv); }
