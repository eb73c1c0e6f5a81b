#include "secbeam/cli.hpp"

int main(int argc, char** argv) { return secbeam::run_cli(argc, argv); }
