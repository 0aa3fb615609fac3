#include "honeyeco/cli.hpp"

int main(int argc, char** argv) { return honeyeco::cli::run(argc, argv); }
