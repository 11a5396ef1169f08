#include "realsep/cli/app.hpp"

int main(int argc, char** argv) { return realsep::cli::run(argc, argv); }
