#include "cli.hpp"

int main(int argc, char** argv) { return bogrape::cli::dispatch(argc, argv); }
