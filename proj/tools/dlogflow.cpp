#include "dlogflow/cli.hpp"

int main(int argc, char** argv) { return dlogflow::cli::run(argc, argv); }
