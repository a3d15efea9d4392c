#include "orliczcorr/cli.hpp"

int main(int argc, char** argv) { return orliczcorr::run_cli(argc, argv); }
