#include <iosa/cli.hpp>

int main(int argc, char** argv) { return iosa::cli::run(argc, argv); }
